"""Regular (MSO) resynchronizers: membership, boundedness, builders,
composition, and the extended four-component variant.

A resynchronizer is an MSO formula gamma over the input word with free
variables (I_1 .. I_m, x, y): the origin x of an output position may be
redirected to y.  A pair of origin graphs sharing input and output is
related when one parameter valuation makes gamma hold at every output
position.

Membership search specializes gamma's x/y tracks to the concrete origin
pair of each output position, producing per-position acceptors of valid
parameter labelings, and intersects those acceptors (layered DFAs over
rows of parameter bits, trimmed and minimized between intersections).
A brute-force search over all parameter valuations is kept as the test
oracle for small instances.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from . import mso
from .mso import (Formula, Top, InSet, Succ, Lt, Leq, Letter, First, Last, Or, Not, Exists,
                  f_and, forall, implies, eq, evaluate, is_second_order)
from .automata import StructuredNfa, AmbiguityReport
from .transducers import OriginGraph

X, Y = "x", "y"


class ResyncError(ValueError):
    pass


@dataclass(frozen=True)
class ResyncWitness:
    """Parameter valuation: one bit vector of input length per parameter."""
    params: tuple        # tuple of bit tuples, aligned with R.params
    out_params: tuple = ()

    def param_sets(self):
        return tuple(frozenset(i + 1 for i, b in enumerate(vec) if b) for vec in self.params)


class Resynchronizer:
    """Simplified regular resynchronizer: m input parameters plus gamma.

    gamma is a formula with free variables among params + (x, y), or
    directly an automaton whose tracks are params + (x, y).  The base
    alphabet is fixed at construction; graphs checked against this
    resynchronizer must use letters from it.
    """

    def __init__(self, params=(), gamma=None, gamma_automaton=None, base=("a", "b"), name=""):
        self.params = tuple(params)
        self.gamma_formula = gamma
        self.name = name
        if (gamma is None) == (gamma_automaton is None):
            raise ResyncError("provide exactly one of gamma or gamma_automaton")
        if gamma_automaton is not None:
            want = self.params + (X, Y)
            if gamma_automaton.alphabet.tracks != want:
                raise ResyncError(
                    f"gamma automaton tracks {gamma_automaton.alphabet.tracks} != {want}")
            self.base = frozenset(gamma_automaton.alphabet.base)
        else:
            self.base = frozenset(base)
            extra = gamma.free_vars() - set(self.params) - {X, Y}
            if extra:
                raise ResyncError(f"gamma uses unknown free variables {sorted(extra)}")
        for p in self.params:
            if not is_second_order(p):
                raise ResyncError(f"parameter names must be second-order (uppercase): {p!r}")
        self._nfa = gamma_automaton
        self._dfa = None
        self._delta = None

    @property
    def m(self):
        return len(self.params)

    @property
    def signature(self):
        return self.params + (X, Y)

    def gamma_nfa(self) -> StructuredNfa:
        if self._nfa is None:
            self._nfa = mso.mso_compile(self.gamma_formula, self.signature, self.base)
        return self._nfa

    def gamma_dfa(self):
        """Determinized and minimized gamma with its transition dict."""
        if self._dfa is None:
            d = self.gamma_nfa().minimize()
            self._dfa = d
            self._delta = {(p, a): q for (p, a, q) in d.transitions}
        return self._dfa, self._delta

    def gamma_holds(self, u, param_bits, xhat, yhat) -> bool:
        """Does (u, params, x=xhat, y=yhat) satisfy gamma?

        Uses the naive evaluator when a formula is available, so witness
        checking is independent of the automaton pipeline.
        """
        if self.gamma_formula is not None:
            env = {X: xhat, Y: yhat}
            for name, vec in zip(self.params, param_bits):
                env[name] = frozenset(i + 1 for i, b in enumerate(vec) if b)
            return evaluate(self.gamma_formula, tuple(u), env)
        return self.gamma_holds_dfa(u, param_bits, xhat, yhat)

    def gamma_holds_dfa(self, u, param_bits, xhat, yhat) -> bool:
        """Same question answered by the compiled automaton."""
        dfa, delta = self.gamma_dfa()
        state = next(iter(dfa.initial))
        for p, a in enumerate(u, start=1):
            bits = tuple(vec[p - 1] for vec in param_bits) + \
                   (1 if p == xhat else 0, 1 if p == yhat else 0)
            state = delta[(state, (a, bits))]
        return state in dfa.final


# -- layered DFAs over parameter rows ---------------------------------------
#
# A layered DFA represents a set of parameter valuations for one concrete
# input word: layer p maps states to their moves on the 2^m possible rows
# of parameter bits at position p+1.

class _Layered:
    __slots__ = ("n", "rows", "layers", "accepting")

    def __init__(self, n, rows, layers, accepting):
        self.n = n
        self.rows = rows
        self.layers = layers        # list of dicts: state -> {row: next_state}
        self.accepting = accepting  # set of final-layer states


def _specialize(resync, u, xhat, yhat):
    """Acceptor of the parameter labelings of u valid for origins (xhat, yhat)."""
    dfa, delta = resync.gamma_dfa()
    n = len(u)
    rows = tuple(itertools.product((0, 1), repeat=resync.m))
    layers = []
    frontier = {next(iter(dfa.initial))}
    for p in range(1, n + 1):
        a = u[p - 1]
        xb = 1 if p == xhat else 0
        yb = 1 if p == yhat else 0
        layer = {}
        nxt = set()
        for s in frontier:
            moves = {}
            for row in rows:
                t = delta[(s, (a, row + (xb, yb)))]
                moves[row] = t
                nxt.add(t)
            layer[s] = moves
        layers.append(layer)
        frontier = nxt
    return _layered_trim(_Layered(n, rows, layers, frontier & dfa.final))


def _layered_trim(lay):
    """Drop moves without a path to acceptance; None when empty."""
    if lay is None or not lay.accepting:
        return None
    live = set(lay.accepting)
    for p in range(lay.n - 1, -1, -1):
        keep = {}
        nlive = set()
        for s, moves in lay.layers[p].items():
            pruned = {row: t for row, t in moves.items() if t in live}
            if pruned:
                keep[s] = pruned
                nlive.add(s)
        lay.layers[p] = keep
        live = nlive
    if lay.n and not lay.layers[0]:
        return None
    return lay


def _layered_minimize(lay):
    """Merge states with identical suffix behavior, layer by layer."""
    if lay is None:
        return None
    rep = {s: "acc" for s in lay.accepting}
    lay.accepting = {"acc"}
    for p in range(lay.n - 1, -1, -1):
        sigs = {}
        newlayer = {}
        newrep = {}
        for s, moves in lay.layers[p].items():
            sig = tuple(sorted((row, rep[t]) for row, t in moves.items()))
            canon = sigs.get(sig)
            if canon is None:
                canon = (p, len(sigs))
                sigs[sig] = canon
                newlayer[canon] = {row: rep[t] for row, t in moves.items()}
            newrep[s] = canon
        lay.layers[p] = newlayer
        rep = newrep
    return lay


def _layered_intersect(a, b):
    """Product of two layered DFAs over the same word and the same rows."""
    if a is None or b is None:
        return None
    n, rows = a.n, a.rows
    layers = []
    frontier = {(sa, sb) for sa in a.layers[0] for sb in b.layers[0]} if n else set()
    for p in range(n):
        la, lb = a.layers[p], b.layers[p]
        layer = {}
        nxt = set()
        for (sa, sb) in frontier:
            ma, mb = la.get(sa), lb.get(sb)
            if ma is None or mb is None:
                continue
            moves = {}
            for row, ta in ma.items():
                tb = mb.get(row)
                if tb is None:
                    continue
                moves[row] = (ta, tb)
                nxt.add((ta, tb))
            if moves:
                layer[(sa, sb)] = moves
        layers.append(layer)
        frontier = nxt
    accepting = {(sa, sb) for (sa, sb) in frontier
                 if sa in a.accepting and sb in b.accepting}
    return _layered_trim(_Layered(n, rows, layers, accepting))


def _layered_least_rows(lay):
    """Lexicographically least accepted row sequence (position-major)."""
    if lay is None:
        return None
    rows_out = []
    if lay.n == 0:
        return rows_out
    s = min(lay.layers[0], key=repr)
    for p in range(lay.n):
        moves = lay.layers[p][s]
        row = min(moves)
        rows_out.append(row)
        s = moves[row]
    return rows_out


# -- membership -------------------------------------------------------------

def _check_graph_pair(sigma, sigma_p):
    if sigma.input != sigma_p.input or sigma.output != sigma_p.output:
        raise ResyncError("resynchronization relates graphs with equal input and output words")


def check_witness(resync, sigma: OriginGraph, sigma_p: OriginGraph, witness: ResyncWitness) -> bool:
    """Re-check a parameter valuation against gamma at every output position."""
    _check_graph_pair(sigma, sigma_p)
    pairs = {(sigma.orig[t], sigma_p.orig[t]) for t in range(len(sigma.output))}
    return all(resync.gamma_holds(sigma.input, witness.params, xh, yh) for (xh, yh) in pairs)


def pair_in_resync(resync: Resynchronizer, sigma: OriginGraph, sigma_p: OriginGraph,
                   witness: ResyncWitness | None = None):
    """Decide (sigma, sigma') in [[R]]; returns a ResyncWitness or None.

    With an explicit witness, only verifies it (returning it back or None).
    Otherwise searches for the lexicographically least parameter valuation,
    comparing per-position bit rows in parameter order.
    """
    _check_graph_pair(sigma, sigma_p)
    if not set(sigma.input) <= resync.base:
        raise ResyncError("input word uses letters outside the resynchronizer's base alphabet")
    if witness is not None:
        return witness if check_witness(resync, sigma, sigma_p, witness) else None
    u = sigma.input
    n = len(u)
    pairs = sorted({(sigma.orig[t], sigma_p.orig[t]) for t in range(len(sigma.output))})
    if resync.m == 0:
        empty = ()
        if all(resync.gamma_holds(u, empty, xh, yh) for (xh, yh) in pairs):
            return ResyncWitness(())
        return None
    current = None
    for i, (xh, yh) in enumerate(pairs):
        spec = _layered_minimize(_specialize(resync, u, xh, yh))
        if spec is None:
            return None
        current = spec if i == 0 else _layered_minimize(_layered_intersect(current, spec))
        if current is None:
            return None
    if current is None:   # no output positions at all
        return ResyncWitness(tuple((0,) * n for _ in range(resync.m)))
    rows = _layered_least_rows(current)
    bits = tuple(tuple(r[i] for r in rows) for i in range(resync.m))
    return ResyncWitness(bits)


def pair_in_resync_bruteforce(resync: Resynchronizer, sigma, sigma_p):
    """Oracle: try every parameter valuation; exponential in m * |u|."""
    _check_graph_pair(sigma, sigma_p)
    u = sigma.input
    n = len(u)
    pairs = {(sigma.orig[t], sigma_p.orig[t]) for t in range(len(sigma.output))}
    for combo in itertools.product(itertools.product((0, 1), repeat=n), repeat=resync.m):
        if all(resync.gamma_holds(u, combo, xh, yh) for (xh, yh) in pairs):
            return ResyncWitness(combo)
    return None


# -- boundedness -------------------------------------------------------------

@dataclass(frozen=True)
class BoundednessResult:
    bounded: bool
    report: AmbiguityReport | None = None   # pattern evidence when unbounded
    detail: str = ""


def source_guessing_nfa(resync: Resynchronizer):
    """NFA over base x B^(m+1) whose accepting runs on (u, params, y)
    correspond one-to-one with the sources x accepted by gamma.

    States are (d, placed) over the determinized gamma; the x track is
    dropped and the single x bit is placed nondeterministically.
    """
    dfa, delta = resync.gamma_dfa()
    tracks = resync.params + (Y,)
    alpha = dfa.alphabet.with_tracks(tracks)
    trans = []
    for (p, (a, bits), q) in dfa.transitions:
        row = bits[:resync.m] + bits[resync.m + 1:]
        if bits[resync.m] == 0:
            trans.append(((p, 0), (a, row), (q, 0)))
            trans.append(((p, 1), (a, row), (q, 1)))
        else:
            trans.append(((p, 0), (a, row), (q, 1)))
    states = {(s, f) for s in dfa.states for f in (0, 1)}
    init = {(next(iter(dfa.initial)), 0)}
    final = {(s, 1) for s in dfa.final}
    return StructuredNfa(alpha, states, init, final, tuple(trans)).trim()


def _place_once_unbounded(resync):
    """Infinite-ambiguity test specialized to the place-once NFA.

    Any infinite-ambiguity pattern of the source-guessing NFA has the shape
    p = (d, unplaced), q = (m, placed) with one pump word looping both, since
    the unplaced and placed halves are deterministic.  Equivalently, the
    graph over triples (a, b, t in D + {unplaced}) with extra restart edges
    (a, b, b) -> (a, b, unplaced) has a cycle through an eligible restart
    edge.  Polynomial in |D|^3; returns a pump description or None.
    """
    dfa, delta = resync.gamma_dfa()
    xi = resync.m
    letters0 = {}
    jump = {}
    for (p, (a, bits), q) in dfa.transitions:
        row = bits[:xi] + bits[xi + 1:]
        if bits[xi] == 0:
            letters0.setdefault((a, row), {})[p] = q
        else:
            jump.setdefault((a, row), {})[p] = q
    # dedupe letters acting identically (joint x=0 / x=1 behavior)
    classes = {}
    for ltr in letters0:
        sig = (tuple(sorted(letters0[ltr].items(), key=repr)),
               tuple(sorted(jump.get(ltr, {}).items(), key=repr)))
        classes.setdefault(sig, ltr)
    letters = list(classes.values())

    init = next(iter(dfa.initial))
    fwd = {}
    bwd = {}
    for ltr in letters:
        for p, q in letters0[ltr].items():
            fwd.setdefault(p, set()).add(q)
            bwd.setdefault(q, set()).add(p)
    acc = _reach({init}, fwd)
    coacc = _reach(set(dfa.final), bwd)

    U = "unplaced"
    seeds = deque()
    seen = set()
    for a in acc:
        for b in coacc:
            node = (a, b, U)
            seeds.append(node)
            seen.add(node)
    edges = {}
    order = []
    queue = seeds
    while queue:
        node = queue.popleft()
        order.append(node)
        a, b, t = node
        outs = set()
        for ltr in letters:
            la = letters0[ltr]
            if a not in la or b not in la:
                continue
            na, nb = la[a], la[b]
            if t is U:
                outs.add((na, nb, U))
                j = jump.get(ltr, {}).get(a)
                if j is not None:
                    outs.add((na, nb, j))
            else:
                if t in la:
                    outs.add((na, nb, la[t]))
        if a in acc and b in coacc and t == b:
            outs.add((a, b, U))   # restart edge: a pump cycle may recombine here
        edges[node] = outs
        for nxt in outs:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    comp = _scc_iter(order, edges)
    for node in order:
        a, b, t = node
        if t == b and t is not U and a in acc and b in coacc:
            restart = (a, b, U)
            if restart in comp and comp[restart] == comp.get(node):
                return (a, b)
    return None


def _reach(seed, edges):
    out = set(seed)
    q = deque(seed)
    while q:
        x = q.popleft()
        for y in edges.get(x, ()):
            if y not in out:
                out.add(y)
                q.append(y)
    return out


def _scc_iter(vertices, edges):
    index = {}
    low = {}
    onstack = set()
    stack = []
    comp = {}
    counter = itertools.count()
    cid = itertools.count()
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                elif w in onstack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                c = next(cid)
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp[w] = c
                    if w == v:
                        break
    return comp


def is_bounded(resync: Resynchronizer) -> BoundednessResult:
    """Decide boundedness: finitely many sources x per (u, params, y).

    Builds the source-guessing NFA over the determinized gamma; sources
    biject with its accepting runs, so boundedness equals finite ambiguity.
    The place-once structure admits only one infinite-ambiguity pattern
    shape, tested by a polynomial cycle search.
    """
    hit = _place_once_unbounded(resync)
    if hit is None:
        return BoundednessResult(True, None, "no pump cycle with a surviving placement")
    return BoundednessResult(
        False, AmbiguityReport("infinite-polynomial", hit, ()),
        f"pump cycle at gamma states {hit}: one loop admits placements that keep accepting")


@dataclass(frozen=True)
class BoundViolation:
    word: tuple          # base word u
    params: tuple        # bit vectors
    target: int          # position y
    sources: tuple       # more than k accepted source positions


def bounded_by(resync: Resynchronizer, k: int, max_len: int):
    """Exhaustively check bound k on all words up to max_len.

    Explores the (k+1)-fold product of the source-guessing NFA with
    pairwise-distinct placements; unplaced copies share one gamma state, so
    a product state is (shared state, multiset of placed states).  Returns
    None when the bound holds on the sweep, else a BoundViolation.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    dfa, delta = resync.gamma_dfa()
    xi = resync.m
    step0 = {}
    step1 = {}
    for (p, (a, bits), q) in dfa.transitions:
        row = bits[:xi] + bits[xi + 1:]
        if bits[xi] == 0:
            step0[(p, (a, row))] = q
        else:
            step1[(p, (a, row))] = q
    letters = sorted({(a, bits[:xi] + bits[xi + 1:]) for (_p, (a, bits), _q) in dfa.transitions})
    init = next(iter(dfa.initial))
    start = (init, ())
    seen = {start}
    frontier = [(start, ())]
    for _depth in range(max_len):
        nxt = []
        for ((d0, placed), path) in frontier:
            for ltr in letters:
                nd0 = step0[(d0, ltr)]
                nplaced = tuple(sorted((step0[(s, ltr)] for s in placed), key=repr))
                cands = [((nd0, nplaced), path + (ltr, False))]
                if len(placed) <= k:
                    extra = tuple(sorted(nplaced + (step1[(d0, ltr)],), key=repr))
                    cands.append(((nd0, extra), path + (ltr, True)))
                for (state, npath) in cands:
                    if state in seen:
                        continue
                    seen.add(state)
                    if len(state[1]) == k + 1 and all(s in dfa.final for s in state[1]):
                        return _violation_from_path(resync, npath, dfa, delta)
                    nxt.append((state, npath))
        frontier = nxt
    return None


def _violation_from_path(resync, path, dfa, delta):
    letters = path[0::2]
    u = tuple(a for (a, _row) in letters)
    rows = [row for (_a, row) in letters]
    params = tuple(tuple(row[i] for row in rows) for i in range(resync.m))
    ys = [p + 1 for p, row in enumerate(rows) if row[resync.m]]
    target = ys[0] if ys else 0
    sources = tuple(xh for xh in range(1, len(u) + 1)
                    if resync.gamma_holds(u, params, xh, target))
    return BoundViolation(u, params, target, sources)


# -- builders ----------------------------------------------------------------

def make_identity(base=("a", "b")):
    return Resynchronizer((), eq(X, Y), base=base, name="identity")


def make_universal(base=("a", "b")):
    return Resynchronizer((), Top(), base=base, name="universal")


def make_pm1(base=("a", "b")):
    return Resynchronizer((), Or(Succ(X, Y, 1), Succ(Y, X, 1)), base=base, name="pm1")


def make_shift(k, base=("a", "b")):
    """Left shift by at most k: y <= x <= y + k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    gamma = mso.f_or(*[Succ(X, Y, j) for j in range(k + 1)])
    return Resynchronizer((), gamma, base=base, name=f"shift({k})")


def make_first(base=("a", "b")):
    return Resynchronizer((), First(X), base=base, name="first-source")


def make_param_example(base=("a", "b")):
    """One parameter; gamma = (I = {x}) or (x = y)."""
    i_is_x = f_and(InSet(X, "I"), forall("w", implies(InSet("w", "I"), eq("w", X))))
    return Resynchronizer(("I",), Or(i_is_x, eq(X, Y)), base=base, name="param-example")


def make_block(base=("a", "b")):
    """Origins at the start of an a-block may move to its end; b stays put."""
    inside_all_a = forall("z", implies(f_and(Leq(X, "z"), Leq("z", Y)), Letter("a", "z")))
    no_a_before = Not(Exists("w", f_and(Succ(X, "w", 1), Letter("a", "w"))))
    no_a_after = Not(Exists("w", f_and(Succ("w", Y, 1), Letter("a", "w"))))
    move = f_and(Leq(X, Y), inside_all_a, no_a_before, no_a_after)
    stay = f_and(Letter("b", X), eq(X, Y))
    return Resynchronizer((), Or(move, stay), base=base, name="block")


def rk_param_names(k):
    return tuple(f"Right_{i}" for i in range(k)) + tuple(f"Left_{i}" for i in range(k))


def make_Rk(k, base=("a", "b")):
    """The universal 2k-parameter resynchronizer for k-traversal pairs.

    gamma = (x = y) or R_trav or L_trav, where positions sharing a Right_i
    label never traverse each other rightward (no same-label position
    strictly between source and target), and symmetrically for Left_i.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    parts = [eq(X, Y)]
    for i in range(k):
        ri = f"Right_{i}"
        parts.append(f_and(
            InSet(X, ri), Lt(X, Y),
            forall("z", implies(f_and(Lt(X, "z"), Lt("z", Y)), Not(InSet("z", ri))))))
    for i in range(k):
        li = f"Left_{i}"
        parts.append(f_and(
            InSet(X, li), Lt(Y, X),
            forall("z", implies(f_and(Lt(Y, "z"), Lt("z", X)), Not(InSet("z", li))))))
    return Resynchronizer(rk_param_names(k), mso.f_or(*parts), base=base, name=f"R_{k}")


# -- composition --------------------------------------------------------------

def _all_var_names(f: Formula):
    out = set()

    def walk(g):
        if isinstance(g, (Top,)):
            return
        if isinstance(g, Letter):
            out.add(g.var)
        elif isinstance(g, (Leq, Lt, Succ)):
            out.add(g.x)
            out.add(g.y)
        elif isinstance(g, InSet):
            out.add(g.x)
            out.add(g.X)
        elif isinstance(g, (First, Last)):
            out.add(g.var)
        elif isinstance(g, Or):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, Exists):
            out.add(g.var)
            walk(g.body)
    walk(f)
    return out


def rename_free(f: Formula, mapping):
    def sub(name, m):
        return m.get(name, name)

    def walk(g, m):
        if isinstance(g, Top):
            return g
        if isinstance(g, Letter):
            return Letter(g.letter, sub(g.var, m))
        if isinstance(g, Leq):
            return Leq(sub(g.x, m), sub(g.y, m))
        if isinstance(g, Lt):
            return Lt(sub(g.x, m), sub(g.y, m))
        if isinstance(g, Succ):
            return Succ(sub(g.x, m), sub(g.y, m), g.k)
        if isinstance(g, InSet):
            return InSet(sub(g.x, m), sub(g.X, m))
        if isinstance(g, First):
            return First(sub(g.var, m))
        if isinstance(g, Last):
            return Last(sub(g.var, m))
        if isinstance(g, Or):
            return Or(walk(g.left, m), walk(g.right, m))
        if isinstance(g, Not):
            return Not(walk(g.body, m))
        if isinstance(g, Exists):
            inner = {k: v for k, v in m.items() if k != g.var}
            return Exists(g.var, walk(g.body, inner))
        raise TypeError(f"unknown node {g!r}")

    return walk(f, dict(mapping))


def compose(r1: Resynchronizer, r2: Resynchronizer) -> Resynchronizer:
    """gamma(I, x, y) = exists mid. gamma1(I1, mid, y) and gamma2(I2, x, mid).

    Applying the result moves an origin first by r2 and then by r1, so the
    relational composition of [[r1]] after [[r2]] is contained in the
    result's semantics (containment, not equality: the intermediate may mix
    across output positions).
    """
    if r1.base != r2.base:
        raise ResyncError("composed resynchronizers must share the base alphabet")
    if r1.gamma_formula is None or r2.gamma_formula is None:
        raise ResyncError("compose requires formula-backed resynchronizers")
    taken = set(r1.params)
    ren2 = {}
    for p in r2.params:
        q = p
        while q in taken:
            q = q + "_b"
        ren2[p] = q
        taken.add(q)
    g2 = rename_free(r2.gamma_formula, ren2)
    used = _all_var_names(r1.gamma_formula) | _all_var_names(g2) | taken | {X, Y}
    mid = "mid"
    while mid in used:
        mid += "_"
    g1 = rename_free(r1.gamma_formula, {X: mid})
    g2 = rename_free(g2, {Y: mid})
    gamma = Exists(mid, f_and(g1, g2))
    params = r1.params + tuple(ren2[p] for p in r2.params)
    return Resynchronizer(params, gamma, base=r1.base,
                          name=f"compose({r1.name or 'r1'},{r2.name or 'r2'})")


# -- extended resynchronizers -------------------------------------------------

class ExtendedResynchronizer:
    """The four-component variant: (alpha, beta, gamma-by-type, delta).

    Output types are output letters enriched with n output-parameter bits.
    gamma_by_type and delta_by_type_pair are total maps; a single shared
    formula may be given and is used for every type (pair).
    """

    def __init__(self, in_params=(), out_params=(), alpha=None, beta=None,
                 gamma=None, gamma_by_type=None, delta=None, delta_by_type_pair=None,
                 input_base=("a", "b"), output_base=("c", "d"), name=""):
        self.in_params = tuple(in_params)
        self.out_params = tuple(out_params)
        self.input_base = frozenset(input_base)
        self.output_base = frozenset(output_base)
        self.alpha = alpha if alpha is not None else Top()
        self.beta = beta if beta is not None else Top()
        self.name = name
        types = self.types()
        if gamma_by_type is None:
            gamma = gamma if gamma is not None else Top()
            gamma_by_type = {t: gamma for t in types}
        if delta_by_type_pair is None:
            delta = delta if delta is not None else Top()
            delta_by_type_pair = {(t1, t2): delta for t1 in types for t2 in types}
        missing = set(types) - set(gamma_by_type)
        if missing:
            raise ResyncError(f"gamma_by_type misses types {sorted(missing)}")
        self.gamma_by_type = dict(gamma_by_type)
        self.delta_by_type_pair = dict(delta_by_type_pair)
        self._gamma_cache = {}

    @property
    def m(self):
        return len(self.in_params)

    @property
    def n_out(self):
        return len(self.out_params)

    def types(self):
        return [(c,) + bits for c in sorted(self.output_base)
                for bits in itertools.product((0, 1), repeat=self.n_out)]

    def _gamma_resync(self, tau):
        if tau not in self._gamma_cache:
            self._gamma_cache[tau] = Resynchronizer(
                self.in_params, self.gamma_by_type[tau], base=self.input_base)
        return self._gamma_cache[tau]

    def _delta_holds(self, u, ibits, t1, t2, z1, z2):
        f = self.delta_by_type_pair[(t1, t2)]
        env = {X: z1, Y: z2}
        for nm, vec in zip(self.in_params, ibits):
            env[nm] = frozenset(i + 1 for i, b in enumerate(vec) if b)
        return evaluate(f, tuple(u), env)

    def _alpha_holds(self, u, ibits):
        env = {nm: frozenset(i + 1 for i, b in enumerate(vec) if b)
               for nm, vec in zip(self.in_params, ibits)}
        return evaluate(self.alpha, tuple(u), env)

    def _beta_holds(self, v, obits):
        env = {nm: frozenset(i + 1 for i, b in enumerate(vec) if b)
               for nm, vec in zip(self.out_params, obits)}
        return evaluate(self.beta, tuple(v), env)


def extended_pair_in_resync(ext: ExtendedResynchronizer, sigma: OriginGraph,
                            sigma_p: OriginGraph):
    """Search input and output parameters satisfying all four families.

    Output parameters are searched exhaustively (exponential in
    n_out * |v|, fine at desk scale); input parameters by brute force, the
    per-type constraint sets being small for the shipped examples.
    """
    _check_graph_pair(sigma, sigma_p)
    u, v = sigma.input, sigma.output
    nu, nv = len(u), len(v)
    for obits in itertools.product(itertools.product((0, 1), repeat=nv), repeat=ext.n_out):
        if not ext._beta_holds(v, obits):
            continue
        tys = [
            (v[t],) + tuple(vec[t] for vec in obits)
            for t in range(nv)
        ]
        found = _search_ibits(ext, sigma, sigma_p, tys)
        if found is not None:
            return ResyncWitness(found, obits)
    return None


def _search_ibits(ext, sigma, sigma_p, tys):
    u = sigma.input
    nu = len(u)
    nv = len(sigma.output)
    for ibits in itertools.product(itertools.product((0, 1), repeat=nu), repeat=ext.m):
        if not ext._alpha_holds(u, ibits):
            continue
        ok = True
        for t in range(nv):
            r = ext._gamma_resync(tys[t])
            if not r.gamma_holds(u, ibits, sigma.orig[t], sigma_p.orig[t]):
                ok = False
                break
        if ok:
            for t in range(nv - 1):
                if not ext._delta_holds(u, ibits, tys[t], tys[t + 1],
                                        sigma_p.orig[t], sigma_p.orig[t + 1]):
                    ok = False
                    break
        if ok:
            return ibits
    return None


def simplify_extended(ext: ExtendedResynchronizer) -> Resynchronizer:
    """Union of the per-type gammas; drops alpha, beta, delta and the output
    parameters.  Over-approximates the semantics and multiplies the bound by
    at most the number of output types.
    """
    gammas = [ext.gamma_by_type[t] for t in ext.types()]
    gamma = mso.f_or(*gammas)
    return Resynchronizer(ext.in_params, gamma, base=ext.input_base,
                          name=f"simplified({ext.name or 'ext'})")


def make_first_to_last(input_base=("a", "b"), output_base=("c", "d")):
    """Only origins at the first input position move, and only to the last."""
    return ExtendedResynchronizer(
        gamma=f_and(First(X), Last(Y)),
        input_base=input_base, output_base=output_base, name="1st-to-last")
