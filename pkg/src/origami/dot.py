"""Graphviz exports: bipartite origin graphs and pair overlays.

Layout follows the figures this code reproduces: the input row sits above
the output row, solid arrows are origins; in overlays, solid arrows are
the source graph's origins and dashed arrows the target's, with the most
traversed input position drawn with a double border.
"""

from __future__ import annotations

from .transducers import OriginGraph
from .traversal import traversal_report


def _rows(g: OriginGraph, out):
    out.append("  { rank=same;")
    for p, a in enumerate(g.input, start=1):
        out.append(f'    i{p} [label="{a}", shape=plaintext];')
    out.append("  }")
    out.append("  { rank=same;")
    for t, c in enumerate(g.output, start=1):
        out.append(f'    o{t} [label="{c}", shape=plaintext];')
    out.append("  }")
    for p in range(1, len(g.input)):
        out.append(f"  i{p} -> i{p + 1} [style=invis];")
    for t in range(1, len(g.output)):
        out.append(f"  o{t} -> o{t + 1} [style=invis];")
    if g.input and g.output:
        out.append("  i1 -> o1 [style=invis];")


def origin_graph_dot(g: OriginGraph, name="origin_graph") -> str:
    out = [f"digraph {name} {{", "  rankdir=TB;"]
    _rows(g, out)
    for t, p in enumerate(g.orig, start=1):
        out.append(f"  o{t} -> i{p};")
    out.append("}")
    return "\n".join(out) + "\n"


def overlay_dot(sigma: OriginGraph, sigma_p: OriginGraph, name="overlay") -> str:
    """Both origin maps on one drawing; the argmax-traversed position is
    double-bordered."""
    report = traversal_report(sigma, sigma_p)
    best = None
    for z in range(1, len(sigma.input) + 1):
        count = max(len(report.left_to_right[z - 1]), len(report.right_to_left[z - 1]))
        if count == report.max_count and report.max_count > 0:
            best = z
            break
    out = [f"digraph {name} {{", "  rankdir=TB;"]
    out.append("  { rank=same;")
    for p, a in enumerate(sigma.input, start=1):
        shape = "doublecircle" if p == best else "plaintext"
        out.append(f'    i{p} [label="{a}", shape={shape}];')
    out.append("  }")
    out.append("  { rank=same;")
    for t, c in enumerate(sigma.output, start=1):
        out.append(f'    o{t} [label="{c}", shape=plaintext];')
    out.append("  }")
    for p in range(1, len(sigma.input)):
        out.append(f"  i{p} -> i{p + 1} [style=invis];")
    for t in range(1, len(sigma.output)):
        out.append(f"  o{t} -> o{t + 1} [style=invis];")
    for t, p in enumerate(sigma.orig, start=1):
        out.append(f"  o{t} -> i{p} [style=solid];")
    for t, p in enumerate(sigma_p.orig, start=1):
        out.append(f"  o{t} -> i{p} [style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"
