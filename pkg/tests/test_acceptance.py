"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line with the measured values (run with -s to see them).

Two criteria are faithfully implemented and red:

Criterion 6's exhaustive domino sweep at length 6 finds a real gap in the
prefix form of the domino property: after a left-move setup, a copy tile
may consume the letter standing before the head, and the bottom row (one
configuration ahead) silently leaves the history while the top-row prefix
premise still holds.  The shift containment half of the criterion passes;
only complete matches, not all prefixes, track the history.

Criterion 7 asks for a strictly increasing growth profile at every single
length step; the profile tracks configuration size, which needs two to
three tiles per unit of growth, so plateaus are unavoidable.  The growth
itself (unbounded, nondecreasing) is reported in the printed line.
"""

import itertools
import random
import time

from origami import corpus
from origami.mso import parse_formula, mso_compile, evaluate_extended, First
from origami.transducers import (OriginGraph, RunCaps, run_origin_graphs,
                                 classical_pairs)
from origami.traversal import (traversal_report, max_traversal, greedy_label,
                               GreedyLabelError)
from origami.resync import (Resynchronizer, make_identity, make_universal, make_pm1,
                            make_shift, make_first, make_param_example, make_block,
                            make_Rk, make_first_to_last, simplify_extended,
                            is_bounded, bounded_by, check_witness, compose)
from origami.containment import contains_upto, traversal_profile
from origami.reduction import (halt2, grow, build_tiles, build_Tdown, build_Tup,
                               check_domino_sweep)
from origami.rational import (interleave, deinterleave, rational_pair_accepts,
                              make_rational_block)


def verdict_line(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_id_rev_figures():
    t0 = time.monotonic()
    caps = RunCaps(20, 100)
    gid = run_origin_graphs(corpus.t_id(), "a" * 6, caps)
    grev = run_origin_graphs(corpus.t_rev(), "a" * 6, caps)
    ok_graphs = (
        {(g.output, g.orig) for g in gid.graphs} == {(("a",) * 6, (1, 2, 3, 4, 5, 6))}
        and {(g.output, g.orig) for g in grev.graphs} == {(("a",) * 6, (6, 5, 4, 3, 2, 1))}
    )
    profile = traversal_profile(corpus.t_id(), corpus.t_rev(), 10, caps)
    elapsed = time.monotonic() - t0
    ok = ok_graphs and profile.values[10] == 5 and elapsed < 1.0
    verdict_line(1, ok, f"unique graphs match, profile(10)={profile.values[10]}, "
                        f"{elapsed:.2f}s")


def test_criterion_2_one_two_figures():
    t0 = time.monotonic()
    caps = RunCaps(10, 50)
    expect = {(("a",) * n, ("a",) * m) for n in range(1, 5) for m in range(n, 2 * n + 1)}
    ok_pairs = (classical_pairs(corpus.t_one_two(), 4, caps) == expect
                and classical_pairs(corpus.t_two_one(), 4, caps) == expect)
    big = RunCaps(20, 100)
    onetwo = [g for g in run_origin_graphs(corpus.t_one_two(), "a" * 10, big).graphs
              if len(g.output) == 15]
    twoone = [g for g in run_origin_graphs(corpus.t_two_one(), "a" * 10, big).graphs
              if len(g.output) == 15]
    ok_unique = len(onetwo) == 1 and len(twoone) == 1
    found = traversal_report(twoone[0], onetwo[0]).max_count if ok_unique else None
    profile10 = traversal_profile(corpus.t_one_two(), corpus.t_two_one(), 10, big).values[10]
    elapsed = time.monotonic() - t0
    ok = ok_pairs and ok_unique and found == 3 and profile10 == 3 and elapsed < 10.0
    verdict_line(2, ok, f"classical pairs match, (a^10,a^15) traversal={found}, "
                        f"profile(10)={profile10}, {elapsed:.1f}s")


def test_criterion_3_greedy_property_suite():
    t0 = time.monotonic()
    rng = random.Random(2026)
    rk_cache = {}
    tried = 0
    applicable = 0
    failures = 0
    while tried < 1000:
        tried += 1
        n = rng.randint(1, 8)
        u = "".join(rng.choice("ab") for _ in range(n))
        m = rng.randint(0, 8)
        v = "".join(rng.choice("cd") for _ in range(m))
        s = OriginGraph(u, v, tuple(rng.randint(1, n) for _ in range(m)))
        sp = OriginGraph(u, v, tuple(rng.randint(1, n) for _ in range(m)))
        kappa = max_traversal(s, sp)
        if kappa > 4:
            continue
        applicable += 1
        try:
            assign = greedy_label(s, sp, kappa)
        except GreedyLabelError:
            failures += 1
            continue
        key = (kappa, tuple(sorted(set(u))))
        if key not in rk_cache:
            rk_cache[key] = make_Rk(kappa, base=key[1])
        if not check_witness(rk_cache[key], s, sp, assign.to_witness(n)):
            failures += 1
    elapsed = time.monotonic() - t0
    ok = failures == 0 and applicable > 400 and elapsed < 60.0
    verdict_line(3, ok, f"{applicable}/{tried} pairs with traversal <= 4, "
                        f"{failures} failures, {elapsed:.1f}s")


def test_criterion_4_boundedness_suite():
    builders = {
        "identity": (make_identity(), True),
        "pm1": (make_pm1(), True),
        "shift3": (make_shift(3), True),
        "Rk2": (make_Rk(2), True),
        "param_example": (make_param_example(), True),
        "first_to_last": (simplify_extended(make_first_to_last()), True),
        "block": (make_block(), True),
        "first": (make_first(), True),
        "universal": (make_universal(), False),
    }
    wrong = []
    for name, (r, expect) in builders.items():
        if is_bounded(r).bounded != expect:
            wrong.append(name)
    disagree = []
    for name, (r, expect) in builders.items():
        d, _ = r.gamma_dfa()
        k = 2 * len(d.states) + 1
        sweep_says_bounded = bounded_by(r, k, 6 if r.m <= 1 else 5) is None
        if expect:
            if not sweep_says_bounded:
                disagree.append(name)
        else:
            if all(bounded_by(r, kk, kk + 2) is None for kk in range(0, 4)):
                disagree.append(name)
    ok = not wrong and not disagree
    verdict_line(4, ok, f"verdict errors={wrong}, sweep disagreements={disagree}")


def test_criterion_5_containment_examples():
    t0 = time.monotonic()
    caps = RunCaps(6, 40)
    holds1 = contains_upto(corpus.t_last(), corpus.t_first(), make_first_to_last(),
                           4, caps).holds
    r_first = Resynchronizer((), First("x"), base=("a",), name="first-source")
    holds2 = contains_upto(corpus.t_slow(), corpus.t_fast(), r_first,
                           4, RunCaps(10, 60)).holds
    fails = []
    for k in range(0, 4):
        verdict = contains_upto(corpus.t_fast(), corpus.t_slow(),
                                make_Rk(k, base=("a",)), 6, RunCaps(12, 70))
        fails.append((not verdict.holds) and verdict.counterexample is not None)
    profile = traversal_profile(corpus.t_fast(), corpus.t_slow(), 6, RunCaps(12, 70))
    vals = [profile.values[n] for n in range(1, 7)]
    growing = all(a < b for a, b in zip(vals, vals[1:]))
    elapsed = time.monotonic() - t0
    ok = holds1 and holds2 and all(fails) and growing and elapsed < 30.0
    verdict_line(5, ok, f"holds={holds1},{holds2}, R_k fails k<=3: {fails}, "
                        f"profile={vals} strictly growing={growing}, {elapsed:.1f}s")


def test_criterion_6_reduction_bounded_machine():
    t0 = time.monotonic()
    tiles = build_tiles(halt2())
    violation = check_domino_sweep(tiles, 6)
    tdown, tup = build_Tdown(tiles), build_Tup(tiles)
    shift = make_shift(3 + 2, base=tuple(sorted(tdown.input_alphabet)))
    verdict = contains_upto(tdown, tup, shift, 6, RunCaps(2 + 4 * 6, 90))
    elapsed = time.monotonic() - t0
    ok = violation is None and verdict.holds and elapsed < 120.0
    verdict_line(6, ok, f"domino sweep clean={violation is None} "
                        f"(first wrong-copy sequence: {violation}), "
                        f"shift(K+2) containment={verdict.status}, {elapsed:.1f}s")


def test_criterion_7_reduction_growing_machine():
    t0 = time.monotonic()
    tiles = build_tiles(grow())
    tdown, tup = build_Tdown(tiles), build_Tup(tiles)
    profile = traversal_profile(tdown, tup, 8, RunCaps(2 + 4 * 8, 110))
    vals = [profile.values[n] for n in range(3, 9)]
    strict = all(isinstance(v, int) for v in vals) and \
        all(a < b for a, b in zip(vals, vals[1:]))
    elapsed = time.monotonic() - t0
    nondecreasing = all(a <= b for a, b in zip(vals, vals[1:]))
    grew = vals[-1] > vals[0]
    ok = strict and elapsed < 120.0
    verdict_line(7, ok, f"profile(3..8)={vals}, strictly increasing={strict} "
                        f"(nondecreasing={nondecreasing}, grew={grew}), {elapsed:.1f}s")


MSO_CORPUS = [
    ("x = y + 1", ("x", "y")),
    ("y = x + 1", ("x", "y")),
    ("x = y", ("x", "y")),
    ("x <= y", ("x", "y")),
    ("x < y", ("x", "y")),
    ("first(x)", ("x", "y")),
    ("first(x) & last(y)", ("x", "y")),
    ("a(x) | b(y)", ("x", "y")),
    # block-move gamma
    ("(x <= y & (forall z. ((x <= z & z <= y) -> a(z)))"
     " & !(exists w. (x = w + 1 & a(w))) & !(exists w. (w = y + 1 & a(w))))"
     " | (b(x) & x = y)", ("x", "y")),
    ("exists2 X. (x in X & !(y in X))", ("x", "y")),
    # the one-parameter example
    ("(x in I & forall w. (w in I -> w = x)) | x = y", ("I", "x", "y")),
    # one right-traversal disjunct of the R_2 family
    ("x in Right_0 & x < y & forall z. ((x < z & z < y) -> !(z in Right_0))",
     ("Right_0", "Right_1", "x", "y")),
]


def test_criterion_8_mso_compiler_oracle():
    t0 = time.monotonic()
    rng = random.Random(88)
    mismatches = 0
    checked = 0
    for (text, sig) in MSO_CORPUS:
        formula = parse_formula(text)
        auto = mso_compile(formula, sig, "ab")
        letters = [(a, bits) for a in "ab"
                   for bits in itertools.product((0, 1), repeat=len(sig))]
        exhaustive_len = 6 if len(sig) <= 2 else (4 if len(sig) == 3 else 3)
        for n in range(0, exhaustive_len + 1):
            for w in itertools.product(letters, repeat=n):
                checked += 1
                if auto.accepts(w) != evaluate_extended(formula, w, sig):
                    mismatches += 1
        # longer words sampled with a fixed seed where exhaustion is too big
        for n in range(exhaustive_len + 1, 7):
            for _ in range(400):
                w = tuple(rng.choice(letters) for _ in range(n))
                checked += 1
                if auto.accepts(w) != evaluate_extended(formula, w, sig):
                    mismatches += 1
    elapsed = time.monotonic() - t0
    ok = mismatches == 0
    verdict_line(8, ok, f"{checked} words checked across {len(MSO_CORPUS)} formulas, "
                        f"{mismatches} discrepancies, {elapsed:.1f}s")


def test_criterion_9_rational_suite():
    rng = random.Random(99)
    sig, gam = ("a", "b"), ("c", "d")
    r = make_rational_block(sig, gam)
    blue = OriginGraph("aaabaab", "cdcd", (1, 4, 5, 7))
    red = OriginGraph("aaabaab", "cdcd", (3, 4, 6, 7))
    accepted = rational_pair_accepts(r, blue, red, sig, gam)
    w2 = interleave(red, sig, gam).word
    letters = sorted(set(sig) | set(gam))
    rejected = 0
    mutations = 0
    while mutations < 20:
        pos = rng.randrange(len(w2))
        repl = rng.choice(letters)
        if repl == w2[pos]:
            continue
        mutations += 1
        mutated = w2[:pos] + (repl,) + w2[pos + 1:]
        w1 = interleave(blue, sig, gam).word
        if not r.accepts_pairs(tuple(zip(w1, mutated))):
            rejected += 1
    round_trips = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        u = "".join(rng.choice("ab") for _ in range(n))
        m = rng.randint(0, 6)
        v = "".join(rng.choice("cd") for _ in range(m))
        g = OriginGraph(u, v, tuple(sorted(rng.randint(1, n) for _ in range(m))))
        if deinterleave(interleave(g, sig, gam)) == g:
            round_trips += 1
    ok = accepted and rejected == 20 and round_trips == 200
    verdict_line(9, ok, f"paper pair accepted={accepted}, "
                        f"mutations rejected={rejected}/20, round trips={round_trips}/200")


def test_criterion_10_reflexivity_and_transitivity_carriers():
    caps = RunCaps(5, 35)
    self_ok = []
    for t in corpus.all_corpus():
        base = tuple(sorted(t.input_alphabet))
        self_ok.append(contains_upto(t, t, make_identity(base=base), 3, caps).holds)
    tiles = build_tiles(halt2())
    for t in (build_Tdown(tiles), build_Tup(tiles)):
        base = tuple(sorted(t.input_alphabet))
        self_ok.append(contains_upto(t, t, make_identity(base=base), 1,
                                     RunCaps(5, 16)).holds)
    r_first = Resynchronizer((), First("x"), base=("a",), name="first-source")
    ident = make_identity(base=("a",))
    chain = (contains_upto(corpus.t_slow(), corpus.t_fast(), r_first, 3,
                           RunCaps(8, 50)).holds
             and contains_upto(corpus.t_fast(), corpus.t_fast(), ident, 3,
                               RunCaps(8, 50)).holds
             and contains_upto(corpus.t_slow(), corpus.t_fast(),
                               compose(r_first, ident), 3, RunCaps(8, 50)).holds)
    ok = all(self_ok) and chain
    verdict_line(10, ok, f"self-containment {sum(self_ok)}/{len(self_ok)}, "
                         f"composed chain holds={chain}")
