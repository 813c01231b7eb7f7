#!/usr/bin/env python3
"""Reproduce the worked examples: the identity/reversal origin graphs, the
traversal counts of the two non-resynchronizable pairs, the one-shift and
one-parameter membership checks, and the block-move interleavings.
"""

from origami import corpus
from origami.transducers import OriginGraph, RunCaps, run_origin_graphs
from origami.traversal import traversal_report
from origami.resync import make_pm1, make_param_example, pair_in_resync
from origami.containment import traversal_profile
from origami.rational import interleave, make_rational_block, rational_pair_accepts
from origami.reduction import halt2, build_tiles, build_Tdown, build_Tup
from origami.transducers import enumerate_matching_graphs


def show_graph(tag, g):
    print(f"  {tag}: input={''.join(g.input)} output={''.join(g.output)} "
          f"orig={list(g.orig)}")


def main():
    caps = RunCaps(20, 100)

    print("identity and reversal on a^6 (unique origin graphs):")
    for t in (corpus.t_id(), corpus.t_rev()):
        g = next(iter(run_origin_graphs(t, "a" * 6, caps).graphs))
        show_graph(t.name, g)

    print("\ntraversal profiles (max over graphs of the least-traversal partner):")
    p = traversal_profile(corpus.t_id(), corpus.t_rev(), 10, caps)
    print(f"  id vs rev, lengths 1..10: {[p.values[n] for n in range(1, 11)]}")
    p = traversal_profile(corpus.t_one_two(), corpus.t_two_one(), 10, caps)
    print(f"  one-two vs two-one:       {[p.values[n] for n in range(1, 11)]}")

    print("\none-shift membership (all origins move by exactly one):")
    s = OriginGraph("a" * 6, "b" * 6, (1, 2, 3, 4, 5, 6))
    sp = OriginGraph("a" * 6, "b" * 6, (2, 3, 4, 5, 4, 5))
    print(f"  accepted: {pair_in_resync(make_pm1(base='a'), s, sp) is not None}")

    print("\none-parameter membership (one position may move anywhere):")
    s = OriginGraph("a" * 6, "b" * 6, (1, 2, 3, 3, 5, 6))
    sp = OriginGraph("a" * 6, "b" * 6, (1, 2, 2, 6, 5, 6))
    w = pair_in_resync(make_param_example(base="a"), s, sp)
    print(f"  witness parameter set: {sorted(w.param_sets()[0])}")

    print("\ndomino transducers on the two-step halting machine:")
    tiles = build_tiles(halt2())
    print(tiles.table())
    by_pair = {(t.top, t.bottom): t.index for t in tiles.tiles}
    lam = (
        by_pair[(("q0", "#"), ("q0", "B", "#"))],
        by_pair[(("q0", "B"), ("a", "q1"))],
        by_pair[(("#",), ("#",))],
        by_pair[(("a",), ("a",))],
        by_pair[(("q1", "#"), ("q1", "B", "#"))],
        by_pair[(("a", "q1", "B"), ("q2", "a", "b"))],
        by_pair[(("#",), ("#",))],
    )
    tdown, tup = build_Tdown(tiles), build_Tup(tiles)
    gdown = next(iter(run_origin_graphs(tdown, lam, RunCaps(30, 60)).graphs))
    vlam = gdown.output
    gup = OriginGraph(lam, vlam, next(enumerate_matching_graphs(tup, lam, vlam)))
    rep = traversal_report(gup, gdown)
    at4 = max(len(rep.left_to_right[3]), len(rep.right_to_left[3]))
    print(f"  bottom word: {''.join(vlam)}")
    print(f"  distinct sources traversing tile position 4: {at4}")

    print("\nblock-move interleavings and the pair regex:")
    sig, gam = ("a", "b"), ("c", "d")
    blue = OriginGraph("aaabaab", "cdcd", (1, 4, 5, 7))
    red = OriginGraph("aaabaab", "cdcd", (3, 4, 6, 7))
    print(f"  source: {''.join(interleave(blue, sig, gam).word)}")
    print(f"  target: {''.join(interleave(red, sig, gam).word)}")
    r = make_rational_block(sig, gam)
    print(f"  pair accepted by the block regex: "
          f"{rational_pair_accepts(r, blue, red, sig, gam)}")


if __name__ == "__main__":
    main()
