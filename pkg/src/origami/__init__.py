"""Origin-graph analysis for nondeterministic string transducers."""

from .automata import (StructuredAlphabet, StructuredNfa, intersect, union,
                       ambiguity_class, ambiguity_report, language_equal_upto)
from .mso import mso_compile, parse_formula, evaluate, evaluate_extended
from .transducers import (OneWayTransducer, TwoWayTransducer, OriginGraph, RunCaps,
                          run_origin_graphs, classical_pairs, origin_equivalent_upto)
from .resync import (Resynchronizer, ExtendedResynchronizer, ResyncWitness,
                     pair_in_resync, extended_pair_in_resync, simplify_extended,
                     is_bounded, bounded_by, compose,
                     make_identity, make_universal, make_pm1, make_shift, make_first,
                     make_param_example, make_block, make_Rk, make_first_to_last)
from .traversal import (traverses, traversal_report, max_traversal, greedy_label,
                        LabelAssignment, GreedyLabelError)
from .containment import contains_upto, resync_search, traversal_profile, Verdict
from .reduction import (TuringMachine, Tile, TileSet, build_tiles, history, tape_probe,
                        check_domino_lemma, build_Tup, build_Tdown, build_Tup_prime,
                        build_Tdown_prime, halt2, grow)
from .rational import (InterleavedWord, interleave, deinterleave, rational_pair_accepts,
                       make_rational_shift, make_rational_block, parse_pair_regex,
                       contains_upto_rational)

__all__ = [name for name in dir() if not name.startswith("_")]
