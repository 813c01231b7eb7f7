"""One-way and two-way nondeterministic transducers and their origin
semantics.

Origin conventions (1NT): output produced while consuming input letter i
gets origin i; output produced by an epsilon transition gets the position
of the next unconsumed letter, or the last letter once the input is
exhausted.  Two-way outputs get the current head position, which is always
a word position because endmarker transitions must not produce output.

Enumeration is capped by ``RunCaps``; runs exceeding the caps are pruned
silently and the result records that pruning happened, so callers can
tell exhaustive sweeps from sampled ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

EPS = None          # input component of an epsilon transition
LMARK = "<"         # left endmarker of a two-way tape
RMARK = ">"         # right endmarker
LEFT = "L"
RIGHT = "R"


class EmptyInputError(ValueError):
    pass


class TransducerAlphabetError(ValueError):
    pass


def word(letters):
    """Normalize str or iterable input to a tuple of letters."""
    if letters is None:
        return ()
    if isinstance(letters, str):
        return tuple(letters)
    return tuple(letters)


@dataclass(frozen=True)
class RunCaps:
    max_output_len: int
    max_steps: int

    def __post_init__(self):
        if self.max_output_len <= 0 or self.max_steps <= 0:
            raise ValueError("caps must be strictly positive")


@dataclass(frozen=True)
class OriginGraph:
    input: tuple
    output: tuple
    orig: tuple   # 1-based input position per output position

    def __post_init__(self):
        object.__setattr__(self, "input", word(self.input))
        object.__setattr__(self, "output", word(self.output))
        object.__setattr__(self, "orig", tuple(self.orig))
        if not self.input:
            raise EmptyInputError("origin graphs require a non-empty input word")
        if len(self.orig) != len(self.output):
            raise ValueError("orig must assign one input position per output position")
        for y in self.orig:
            if not 1 <= y <= len(self.input):
                raise ValueError(f"origin {y} out of range 1..{len(self.input)}")

    def sort_key(self):
        return (self.input, self.output, self.orig)


@dataclass(frozen=True)
class OneWayTransducer:
    states: frozenset
    input_alphabet: frozenset
    output_alphabet: frozenset
    transitions: tuple   # (p, letter or EPS, output word tuple, q)
    initial: frozenset
    final: frozenset
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", frozenset(self.output_alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        norm = []
        for (p, a, out, q) in self.transitions:
            out = word(out)
            if a is not EPS and a not in self.input_alphabet:
                raise TransducerAlphabetError(f"input letter {a!r} not in alphabet")
            for c in out:
                if c not in self.output_alphabet:
                    raise TransducerAlphabetError(f"output letter {c!r} not in alphabet")
            if p not in self.states or q not in self.states:
                raise ValueError(f"transition endpoint outside states: {(p, a, out, q)}")
            norm.append((p, a, out, q))
        object.__setattr__(self, "transitions", tuple(norm))

    @property
    def kind(self):
        return "1nt"


@dataclass(frozen=True)
class TwoWayTransducer:
    states: frozenset
    input_alphabet: frozenset
    output_alphabet: frozenset
    transitions: tuple   # (p, letter or LMARK/RMARK, output word tuple, LEFT/RIGHT, q)
    initial: frozenset
    final: frozenset
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", frozenset(self.output_alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        norm = []
        for (p, a, out, d, q) in self.transitions:
            out = word(out)
            if a == LMARK and (d != RIGHT or out):
                raise ValueError("transitions on the left endmarker must move right with empty output")
            if a == RMARK and (d != LEFT or out):
                raise ValueError("transitions on the right endmarker must move left with empty output")
            if a not in (LMARK, RMARK) and a not in self.input_alphabet:
                raise TransducerAlphabetError(f"input letter {a!r} not in alphabet")
            if d not in (LEFT, RIGHT):
                raise ValueError(f"direction must be L or R, got {d!r}")
            for c in out:
                if c not in self.output_alphabet:
                    raise TransducerAlphabetError(f"output letter {c!r} not in alphabet")
            if p not in self.states or q not in self.states:
                raise ValueError(f"transition endpoint outside states: {(p, a, out, d, q)}")
            norm.append((p, a, out, d, q))
        object.__setattr__(self, "transitions", tuple(norm))

    @property
    def kind(self):
        return "2nt"

    def is_deterministic(self):
        seen = set()
        for (p, a, _out, _d, _q) in self.transitions:
            if (p, a) in seen:
                return False
            seen.add((p, a))
        return True


@dataclass(frozen=True)
class RunResult:
    graphs: frozenset
    pruned: bool

    def sorted_graphs(self):
        return sorted(self.graphs, key=lambda g: g.sort_key())


def run_origin_graphs(transducer, u, caps: RunCaps, _index=None) -> RunResult:
    """Enumerate the origin graphs of accepting runs on u, capped.

    Returns graphs deduplicated structurally; two runs with the same
    (input, output, origins) contribute one graph.
    """
    u = word(u)
    if not u:
        raise EmptyInputError("input word must be non-empty")
    if isinstance(transducer, OneWayTransducer):
        return _run_1nt(transducer, u, caps, _index)
    return _run_2nt(transducer, u, caps)


def transition_index(t):
    """Buckets keyed (state, input letter) plus (state, EPS)."""
    by_key = {}
    for (p, a, v, q) in t.transitions:
        by_key.setdefault((p, a), []).append((v, q))
    return by_key


def _run_1nt(t: OneWayTransducer, u, caps, by_key=None):
    n = len(u)
    by_key = by_key if by_key is not None else transition_index(t)
    graphs = set()
    pruned = False
    max_out = caps.max_output_len
    max_steps = caps.max_steps
    final = t.final
    # stack entries: (state, consumed, output, origins, steps)
    stack = [(q, 0, (), (), 0) for q in sorted(t.initial, key=repr)]
    while stack:
        q, i, out, org, steps = stack.pop()
        if i == n and q in final:
            graphs.add(OriginGraph(u, out, org))
        batches = ((by_key.get((q, u[i]), ()) if i < n else ()), by_key.get((q, EPS), ()))
        if steps >= max_steps:
            if batches[0] or batches[1]:
                pruned = True
            continue
        lo = len(out)
        for consuming in (0, 1):
            batch = batches[1 - consuming]
            if not batch:
                continue
            if consuming:
                ni, origin = i + 1, i + 1
            else:
                ni, origin = i, i + 1 if i < n else n
            for (v, r) in batch:
                if lo + len(v) > max_out:
                    pruned = True
                    continue
                stack.append((r, ni, out + v, org + (origin,) * len(v), steps + 1))
    return RunResult(frozenset(graphs), pruned)


def _run_2nt(t: TwoWayTransducer, u, caps):
    n = len(u)

    def tape(pos):
        if pos == 0:
            return LMARK
        if pos == n + 1:
            return RMARK
        return u[pos - 1]

    by_state = {}
    for tr in t.transitions:
        by_state.setdefault((tr[0], tr[1]), []).append(tr)
    graphs = set()
    pruned = False
    stack = [(q, 0, (), (), 0) for q in sorted(t.initial, key=repr)]
    seen = set()
    while stack:
        q, pos, out, org, steps = stack.pop()
        key = (q, pos, out, org)
        if key in seen:
            continue
        seen.add(key)
        if q in t.final:
            graphs.add(OriginGraph(u, out, org))
        if steps >= caps.max_steps:
            if by_state.get((q, tape(pos))):
                pruned = True
            continue
        for (_p, _a, v, d, r) in by_state.get((q, tape(pos)), ()):
            if len(out) + len(v) > caps.max_output_len:
                pruned = True
                continue
            npos = pos + 1 if d == RIGHT else pos - 1
            if npos < 0 or npos > n + 1:
                continue
            stack.append((r, npos, out + v, org + (pos,) * len(v), steps + 1))
    return RunResult(frozenset(graphs), pruned)


def words_upto(alphabet, max_len, min_len=1):
    """All words by length then lexicographic order."""
    letters = sorted(alphabet)
    for n in range(min_len, max_len + 1):
        for w in itertools.product(letters, repeat=n):
            yield w


def sweep_origin_graphs(t: OneWayTransducer, max_len, caps: RunCaps, visit=None):
    """Run visit(u, RunResult) on every non-empty input up to max_len.

    Equivalent to run_origin_graphs per input but amortized: the run
    frontier (partial runs, deduplicated, keyed to minimal step count)
    extends along the input tree, so shared prefixes are processed once.
    Inputs come in prefix (tree) order, not length order; when visit
    returns False the input's extensions are skipped.  With visit omitted,
    returns the collected (u, RunResult) list instead.
    """
    collected = None
    if visit is None:
        collected = []
        visit = lambda u, res: collected.append((u, res)) or True
    letters = sorted(t.input_alphabet)
    by_key = transition_index(t)
    max_out, max_steps = caps.max_output_len, caps.max_steps
    final = t.final

    def eclose(entries, origin):
        # close under eps transitions, outputs taking the given origin
        pruned = False
        queue = list(entries.items())
        while queue:
            (q, out, org), steps = queue.pop()
            if entries.get((q, out, org), steps) < steps:
                continue
            batch = by_key.get((q, EPS))
            if not batch:
                continue
            if steps >= max_steps:
                pruned = True
                continue
            for (v, r) in batch:
                if len(out) + len(v) > max_out:
                    pruned = True
                    continue
                nkey = (r, out + v, org + (origin,) * len(v))
                nsteps = steps + 1
                old = entries.get(nkey)
                if old is None or nsteps < old:
                    entries[nkey] = nsteps
                    queue.append((nkey, nsteps))
        return pruned

    def rec(u, raw, pruned):
        # raw: runs consuming exactly u, no trailing eps steps applied yet
        n = len(u)
        if n:
            closed = dict(raw)
            p_end = eclose(closed, n)
            graphs = frozenset(OriginGraph(u, out, org)
                               for (q, out, org) in closed if q in final)
            if visit(u, RunResult(graphs, pruned or p_end)) is False:
                return
        if n >= max_len:
            return
        mid = dict(raw)
        p_mid = eclose(mid, n + 1)
        for a in letters:
            nu = u + (a,)
            nxt = {}
            npruned = pruned or p_mid
            for (q, out, org), steps in mid.items():
                batch = by_key.get((q, a))
                if not batch:
                    continue
                if steps >= max_steps:
                    npruned = True
                    continue
                for (v, r) in batch:
                    if len(out) + len(v) > max_out:
                        npruned = True
                        continue
                    nkey = (r, out + v, org + (n + 1,) * len(v))
                    nsteps = steps + 1
                    old = nxt.get(nkey)
                    if old is None or nsteps < old:
                        nxt[nkey] = nsteps
            rec(nu, nxt, npruned)

    start = {(q, (), ()): 0 for q in sorted(t.initial, key=repr)}
    rec((), start, False)
    return collected


def classical_pairs(transducer, max_input_len, caps: RunCaps):
    """The input/output relation restricted to inputs up to max_input_len."""
    pairs = set()
    alphabet = transducer.input_alphabet
    for u in words_upto(alphabet, max_input_len):
        for g in run_origin_graphs(transducer, u, caps).graphs:
            pairs.add((g.input, g.output))
    return pairs


def origin_equivalent_upto(t1, t2, max_input_len, caps: RunCaps):
    """Setwise comparison of capped origin semantics.

    Returns (True, None) or (False, counterexample) where the counterexample
    is a minimal-input-length graph present in exactly one side (smallest
    by (input, output, orig) among those).
    """
    if t1.input_alphabet != t2.input_alphabet or t1.output_alphabet != t2.output_alphabet:
        raise TransducerAlphabetError("transducers must share input and output alphabets")
    for n in range(1, max_input_len + 1):
        diff = []
        for u in words_upto(t1.input_alphabet, n, min_len=n):
            g1 = run_origin_graphs(t1, u, caps).graphs
            g2 = run_origin_graphs(t2, u, caps).graphs
            diff.extend(g1 ^ g2)
        if diff:
            return (False, min(diff, key=lambda g: g.sort_key()))
    return (True, None)


# -- output-constrained run search (1NT) ------------------------------------

class MatchIndex:
    """Transitions of a one-way transducer indexed for output-constrained
    search: for each (state, input letter or EPS), the output lengths in
    use and a dict from the exact output word to the target states, so a
    lattice node resolves its moves with a handful of dict lookups and no
    scanning.
    """

    __slots__ = ("t", "exact", "lens", "pad")

    def __init__(self, t: OneWayTransducer):
        self.t = t
        self.exact = {}
        self.lens = {}
        for (p, a, out, q) in sorted(t.transitions, key=repr):
            self.exact.setdefault((p, a, out), []).append(q)
            lens = self.lens.setdefault((p, a), [])
            if len(out) not in lens:
                lens.append(len(out))
        for lens in self.lens.values():
            lens.sort()
        # accepting states able to pad any tail of single eps-emitted
        # letters from a set; lets searches finish long paddings in one scan
        self.pad = {}
        for q in t.final:
            letters = {out[0] for (p, a, out, r) in t.transitions
                       if p == q and a is EPS and len(out) == 1 and r == q}
            if letters:
                self.pad[q] = frozenset(letters)

    def moves(self, q, u, v, n, m, i, j):
        """Applicable transitions at lattice node (q, i, j) as tuples
        (ni, nj, origin, target state)."""
        exact = self.exact
        out_moves = []
        if i < n:
            a = u[i]
            for lo in self.lens.get((q, a), ()):
                if j + lo > m:
                    break
                for r in exact.get((q, a, v[j:j + lo]), ()):
                    out_moves.append((i + 1, j + lo, i + 1, r))
        origin = i + 1 if i < n else n
        for lo in self.lens.get((q, EPS), ()):
            if j + lo > m:
                break
            for r in exact.get((q, EPS, v[j:j + lo]), ()):
                out_moves.append((i, j + lo, origin, r))
        return out_moves


def matching_feasible(t: OneWayTransducer, u, v, index: "MatchIndex | None" = None):
    """Reachability table for runs of t on u producing exactly v.

    Returns (feasible, index): feasible is the set of (q, i, j) nodes from
    which an accepting completion exists, with i input letters consumed and
    j output letters produced so far.  Computed by a backward closure over
    the finite run lattice, so pure eps|eps cycles are safe; only lattice
    cells with transitions compatible with v contribute edges.
    """
    u, v = word(u), word(v)
    n, m = len(u), len(v)
    index = index or MatchIndex(t)
    back = {}
    for q in t.states:
        for i in range(n + 1):
            for j in range(m + 1):
                for (ni, nj, _origin, r) in index.moves(q, u, v, n, m, i, j):
                    back.setdefault((r, ni, nj), []).append((q, i, j))
    feasible = {(q, n, m) for q in t.final}
    frontier = list(feasible)
    while frontier:
        node = frontier.pop()
        for prev in back.get(node, ()):
            if prev not in feasible:
                feasible.add(prev)
                frontier.append(prev)
    return feasible, index


def enumerate_matching_graphs(t: OneWayTransducer, u, v, index=None):
    """Yield the distinct origin tuples of runs of t on u with output v.

    Deterministic DFS order; dead branches are pruned with a feasibility
    check so the enumeration is linear in the number of distinct graphs
    times the lattice size.
    """
    u, v = word(u), word(v)
    n, m = len(u), len(v)
    feasible, index = matching_feasible(t, u, v, index)
    seen = set()

    def rec(q, i, j, org, path):
        if q in t.final and i == n and j == m and org not in seen:
            seen.add(org)
            yield org
        state_key = (q, i, j)
        if state_key in path:
            return
        path.add(state_key)
        for (ni, nj, origin, r) in index.moves(q, u, v, n, m, i, j):
            if (r, ni, nj) not in feasible:
                continue
            yield from rec(r, ni, nj, org + (origin,) * (nj - j), path)
        path.discard(state_key)

    for q0 in sorted(t.initial, key=repr):
        if (q0, 0, 0) in feasible:
            yield from rec(q0, 0, 0, (), set())


def enumerate_matching_graphs_2nt(t: TwoWayTransducer, u, v, caps: RunCaps):
    """Origin tuples of capped 2NT runs on u with output exactly v."""
    u, v = word(u), word(v)
    res = run_origin_graphs(t, u, caps)
    return sorted((g.orig for g in res.graphs if g.output == v)), res.pruned
