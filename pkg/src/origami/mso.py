"""MSO over words: formulas, a naive evaluator, a parser, and compilation
to structured NFAs.

Variable sorts follow the usual case convention: names starting with an
uppercase letter are second-order (sets of positions), everything else is
first-order (single positions).  First-order variables compile as boolean
tracks with an "exactly one 1-bit" automaton conjoined, so one track
construction serves both sorts.

Atom automata use weak semantics (constraints over every marked position)
that coincide with the real semantics on words whose first-order tracks
are singletons; the singleton automata are conjoined when a first-order
variable is projected away and once more at the top level.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .automata import StructuredAlphabet, StructuredNfa, intersect, union


class UnboundVariableError(ValueError):
    pass


class MsoSyntaxError(ValueError):
    pass


def is_second_order(name: str) -> bool:
    return name[0].isupper()


# -- abstract syntax -------------------------------------------------------

@dataclass(frozen=True)
class Formula:
    def free_vars(self) -> frozenset:
        raise NotImplementedError

    def __and__(self, other):
        return f_and(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Top(Formula):
    def free_vars(self):
        return frozenset()


@dataclass(frozen=True)
class Letter(Formula):
    letter: str
    var: str

    def free_vars(self):
        return frozenset([self.var])


@dataclass(frozen=True)
class Leq(Formula):
    x: str
    y: str

    def free_vars(self):
        return frozenset([self.x, self.y])


@dataclass(frozen=True)
class Lt(Formula):
    x: str
    y: str

    def free_vars(self):
        return frozenset([self.x, self.y])


@dataclass(frozen=True)
class InSet(Formula):
    x: str
    X: str

    def free_vars(self):
        return frozenset([self.x, self.X])


@dataclass(frozen=True)
class Succ(Formula):
    """x = y + k with k >= 0; k = 0 is plain position equality."""
    x: str
    y: str
    k: int

    def free_vars(self):
        return frozenset([self.x, self.y])


@dataclass(frozen=True)
class First(Formula):
    var: str

    def free_vars(self):
        return frozenset([self.var])


@dataclass(frozen=True)
class Last(Formula):
    var: str

    def free_vars(self):
        return frozenset([self.var])


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def free_vars(self):
        return self.left.free_vars() | self.right.free_vars()


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def free_vars(self):
        return self.body.free_vars()


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def free_vars(self):
        return self.body.free_vars() - {self.var}


# -- derived constructors --------------------------------------------------

def f_and(*fs):
    fs = list(fs)
    out = Not(Or(Not(fs[0]), Not(fs[1]))) if len(fs) >= 2 else fs[0]
    for f in fs[2:]:
        out = Not(Or(Not(out), Not(f)))
    return out


def f_or(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def implies(a, b):
    return Or(Not(a), b)


def forall(var, body):
    return Not(Exists(var, Not(body)))


def eq(x, y):
    return Succ(x, y, 0)


def bottom():
    return Not(Top())


# -- naive semantics (the compiler's independent oracle) --------------------

def evaluate(formula: Formula, word, env) -> bool:
    """Recursive MSO semantics with quantifiers expanded by enumeration.

    ``word`` is a tuple of base letters, ``env`` maps first-order variables
    to 1-based positions and second-order variables to position sets.
    Exponential in the number of nested second-order quantifiers; meant as
    an oracle at desk scale.
    """
    n = len(word)
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Letter):
        return word[env[formula.var] - 1] == formula.letter
    if isinstance(formula, Leq):
        return env[formula.x] <= env[formula.y]
    if isinstance(formula, Lt):
        return env[formula.x] < env[formula.y]
    if isinstance(formula, InSet):
        return env[formula.x] in env[formula.X]
    if isinstance(formula, Succ):
        return env[formula.x] == env[formula.y] + formula.k
    if isinstance(formula, First):
        return env[formula.var] == 1
    if isinstance(formula, Last):
        return env[formula.var] == n
    if isinstance(formula, Or):
        return evaluate(formula.left, word, env) or evaluate(formula.right, word, env)
    if isinstance(formula, Not):
        return not evaluate(formula.body, word, env)
    if isinstance(formula, Exists):
        v = formula.var
        if is_second_order(v):
            positions = list(range(1, n + 1))
            for r in range(n + 1):
                for combo in itertools.combinations(positions, r):
                    if evaluate(formula.body, word, {**env, v: frozenset(combo)}):
                        return True
            return False
        return any(evaluate(formula.body, word, {**env, v: i}) for i in range(1, n + 1))
    raise TypeError(f"unknown formula node {formula!r}")


def evaluate_extended(formula: Formula, extended_word, signature) -> bool:
    """Evaluate on a word over base x B^len(signature).

    A word models the formula only if every first-order track carries
    exactly one 1-bit; otherwise it is rejected, mirroring the compiled
    automaton's convention.
    """
    word = tuple(a for (a, _bits) in extended_word)
    env = {}
    for i, v in enumerate(signature):
        marked = frozenset(p + 1 for p, (_a, bits) in enumerate(extended_word) if bits[i])
        if is_second_order(v):
            env[v] = marked
        else:
            if len(marked) != 1:
                return False
            env[v] = next(iter(marked))
    return evaluate(formula, word, env)


# -- compilation to automata ------------------------------------------------

def _dfa(alpha, states, init, finals, move):
    """Build a complete DFA from move(state, letter) -> state."""
    trans = []
    for s in states:
        for a in alpha.letters():
            trans.append((s, a, move(s, a)))
    return StructuredNfa(alpha, states, {init}, finals, tuple(trans))


def singleton_automaton(var, alpha) -> StructuredNfa:
    idx = alpha.track_index(var)

    def move(s, letter):
        _a, bits = letter
        if s == "dead":
            return "dead"
        if bits[idx]:
            return {"zero": "one", "one": "dead"}[s]
        return s

    return _dfa(alpha, {"zero", "one", "dead"}, "zero", {"one"}, move)


def _atom_letter(f, alpha):
    idx = alpha.track_index(f.var)

    def move(s, letter):
        a, bits = letter
        if s == "dead" or (bits[idx] and a != f.letter):
            return "dead"
        return "ok"

    return _dfa(alpha, {"ok", "dead"}, "ok", {"ok"}, move)


def _atom_inset(f, alpha):
    ix, iX = alpha.track_index(f.x), alpha.track_index(f.X)

    def move(s, letter):
        _a, bits = letter
        if s == "dead" or (bits[ix] and not bits[iX]):
            return "dead"
        return "ok"

    return _dfa(alpha, {"ok", "dead"}, "ok", {"ok"}, move)


def _atom_leq(f, alpha, strict=False):
    ix, iy = alpha.track_index(f.x), alpha.track_index(f.y)

    def move(s, letter):
        _a, bits = letter
        bx, by = bits[ix], bits[iy]
        if s == "dead":
            return "dead"
        if s == "pre":
            if bx and by:
                return "dead" if strict else "post"
            if bx:
                return "mid"
            if by:
                return "dead"
            return "pre"
        if s == "mid":
            return "post" if by else "mid"
        return "post"

    return _dfa(alpha, {"pre", "mid", "post", "dead"}, "pre", {"post"}, move)


def _atom_succ(f, alpha):
    ix, iy = alpha.track_index(f.x), alpha.track_index(f.y)
    k = f.k
    if k == 0:
        def move(s, letter):
            _a, bits = letter
            if s == "dead" or bits[ix] != bits[iy]:
                return "dead"
            return "ok"

        return _dfa(alpha, {"ok", "dead"}, "ok", {"ok"}, move)

    # ("wait", i) means i positions after y have been read; x expected at step k
    def move2(s, letter):
        _a, bits = letter
        bx, by = bits[ix], bits[iy]
        if s == "dead":
            return "dead"
        if s == "pre":
            if bx:
                return "dead"
            return ("wait", 1) if by else "pre"
        if isinstance(s, tuple):
            i = s[1]
            if i == k:
                return "done" if bx else "dead"
            return "dead" if bx else ("wait", i + 1)
        return "done"

    states = {"pre", "done", "dead"} | {("wait", i) for i in range(1, k + 1)}
    return _dfa(alpha, states, "pre", {"done"}, move2)


def _atom_first(f, alpha):
    idx = alpha.track_index(f.var)

    def move(s, letter):
        _a, bits = letter
        if s == "start":
            return "rest"
        if s == "dead" or bits[idx]:
            return "dead"
        return "rest"

    return _dfa(alpha, {"start", "rest", "dead"}, "start", {"start", "rest"}, move)


def _atom_last(f, alpha):
    idx = alpha.track_index(f.var)

    def move(s, letter):
        _a, bits = letter
        if s == "dead" or s == "marked":
            return "dead"
        return "marked" if bits[idx] else "clean"

    return _dfa(alpha, {"clean", "marked", "dead"}, "clean", {"clean", "marked"}, move)


def _all_accepting(alpha):
    return _dfa(alpha, {"ok"}, "ok", {"ok"}, lambda s, a: "ok")


_MINIMIZE_THRESHOLD = 24


def _compact(n: StructuredNfa) -> StructuredNfa:
    if len(n.states) > _MINIMIZE_THRESHOLD:
        return n.minimize().trim()
    return n.trim()


def _comp(formula, sig, alpha):
    if isinstance(formula, Top):
        return _all_accepting(alpha)
    if isinstance(formula, Letter):
        return _atom_letter(formula, alpha)
    if isinstance(formula, InSet):
        return _atom_inset(formula, alpha)
    if isinstance(formula, Leq):
        return _atom_leq(formula, alpha, strict=False)
    if isinstance(formula, Lt):
        return _atom_leq(formula, alpha, strict=True)
    if isinstance(formula, Succ):
        return _atom_succ(formula, alpha)
    if isinstance(formula, First):
        return _atom_first(formula, alpha)
    if isinstance(formula, Last):
        return _atom_last(formula, alpha)
    if isinstance(formula, Or):
        return _compact(union(_comp(formula.left, sig, alpha), _comp(formula.right, sig, alpha)))
    if isinstance(formula, Not):
        return _comp(formula.body, sig, alpha).complement().minimize().trim()
    if isinstance(formula, Exists):
        v = formula.var
        if v in sig:
            raise MsoSyntaxError(f"variable {v!r} shadows an outer binding")
        sig2 = sig + (v,)
        alpha2 = alpha.with_tracks(sig2)
        inner = _comp(formula.body, sig2, alpha2)
        if not is_second_order(v):
            inner = intersect(inner, singleton_automaton(v, alpha2))
        return _compact(inner.project_track(v))
    raise TypeError(f"unknown formula node {formula!r}")


def mso_compile(formula: Formula, signature, base) -> StructuredNfa:
    """Compile to an NFA over base x B^len(signature).

    The result accepts exactly the extended words modelling the formula;
    first-order tracks only ever accept with exactly one 1-bit.
    """
    sig = tuple(signature)
    if len(set(sig)) != len(sig):
        raise MsoSyntaxError("signature variables must be distinct")
    missing = formula.free_vars() - set(sig)
    if missing:
        raise UnboundVariableError(f"free variables not in signature: {sorted(missing)}")
    alpha = StructuredAlphabet(frozenset(base), sig)
    n = _comp(formula, sig, alpha)
    for v in sig:
        if not is_second_order(v):
            n = intersect(n, singleton_automaton(v, alpha))
    return n.trim()


# -- surface syntax ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(<=|->|[()&|!.<=+]|[A-Za-z_][A-Za-z0-9_]*|\d+)")

_KEYWORDS = {"exists", "exists2", "forall", "forall2", "in", "first", "last", "true", "false"}


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or not m.group(1):
            if text[pos:].strip():
                raise MsoSyntaxError(f"cannot tokenize {text[pos:pos+12]!r} at column {pos}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise MsoSyntaxError("unexpected end of formula")
        self.i += 1
        return t

    def expect(self, tok):
        t = self.next()
        if t != tok:
            raise MsoSyntaxError(f"expected {tok!r}, got {t!r}")

    def parse(self):
        f = self.expr()
        if self.peek() is not None:
            raise MsoSyntaxError(f"trailing tokens starting at {self.peek()!r}")
        return f

    def expr(self):
        t = self.peek()
        if t in ("exists", "exists2", "forall", "forall2"):
            self.next()
            v = self.next()
            if t.endswith("2") != is_second_order(v):
                kind = "second-order (uppercase)" if t.endswith("2") else "first-order (lowercase)"
                raise MsoSyntaxError(f"{t} expects a {kind} variable, got {v!r}")
            self.expect(".")
            body = self.expr()
            return Exists(v, body) if t.startswith("exists") else forall(v, body)
        return self.impl_expr()

    def impl_expr(self):
        f = self.or_expr()
        if self.peek() == "->":
            self.next()
            return implies(f, self.impl_expr())
        return f

    def or_expr(self):
        f = self.and_expr()
        while self.peek() == "|":
            self.next()
            f = Or(f, self.and_expr())
        return f

    def and_expr(self):
        f = self.not_expr()
        while self.peek() == "&":
            self.next()
            f = f_and(f, self.not_expr())
        return f

    def not_expr(self):
        if self.peek() == "!":
            self.next()
            return Not(self.not_expr())
        if self.peek() in ("exists", "exists2", "forall", "forall2"):
            # a quantifier binds the rest of the current subexpression
            return self.expr()
        return self.atom()

    def atom(self):
        t = self.next()
        if t == "(":
            if self.peek() in ("exists", "exists2", "forall", "forall2"):
                f = self.expr()
            else:
                f = self.expr()
            self.expect(")")
            return f
        if t == "true":
            return Top()
        if t == "false":
            return bottom()
        if t in ("first", "last"):
            self.expect("(")
            v = self.next()
            self.expect(")")
            return First(v) if t == "first" else Last(v)
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t):
            raise MsoSyntaxError(f"unexpected token {t!r}")
        if self.peek() == "(":
            self.next()
            v = self.next()
            self.expect(")")
            return Letter(t, v)
        x = t
        op = self.next()
        if op == "in":
            X = self.next()
            if not is_second_order(X):
                raise MsoSyntaxError(f"'in' expects a second-order variable, got {X!r}")
            return InSet(x, X)
        if op == "<=":
            return Leq(x, self.next())
        if op == "<":
            return Lt(x, self.next())
        if op == "=":
            y = self.next()
            if self.peek() == "+":
                self.next()
                k = self.next()
                if not k.isdigit():
                    raise MsoSyntaxError(f"expected an integer after '+', got {k!r}")
                return Succ(x, y, int(k))
            return eq(x, y)
        raise MsoSyntaxError(f"unexpected token {op!r} after variable {x!r}")


def parse_formula(text: str) -> Formula:
    """Parse the surface syntax.

    Connectives: ``&  |  !``, quantifiers ``exists x.``, ``exists2 X.``,
    ``forall x.``, ``forall2 X.``, atoms ``a(x)``, ``x <= y``, ``x < y``,
    ``x = y``, ``x = y + 1``, ``x in X``, ``first(x)``, ``last(x)``,
    ``true``, ``false``, parentheses.
    """
    return _Parser(_tokenize(text)).parse()
