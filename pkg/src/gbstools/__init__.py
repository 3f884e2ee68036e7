"""Graphs of groups with infinite cyclic vertex and edge groups.

Move calculus, Bass-Serre words and ellipticity, tree balls and fold types,
mod-2 complexity bounds, and the valence-5 chain family of F2-splittings.
"""

from .bound import (BoundReport, ChainComplex2, accessibility_bounds, delta, format_complex,
                    h1_dim_mod2, parse_complex)
from .chains import ChainSpec, family_spec, is_two_generated, make_chain, verify_family
from .errors import (BallTooLargeError, ComplexError, GbsError, InvalidGraphError, MoveError,
                     ParseError, WordError)
from .graph import (INFINITE_INDEX, Edge, GbsGraph, first_betti_number, format_graph,
                    is_isomorphic, is_locally_finite, is_reduced, parse_graph, validate)
from .moves import (MoveRecord, apply_move, collapse, essential_vertices, expand, invert,
                    read_move_log, reduce_graph, replay, subdivide, transport_word, unsubdivide,
                    write_move_log)
from .tree_ball import (TreeBall, ball_table, classify_fold, expand_ball,
                        inessential_tree_vertices, interior_valences, level_counts)
from .words import (GogWord, format_word, inverse, is_elliptic, multiply, normal_form, parse_word,
                    power, reduce_word, translation_length)

__version__ = "0.1.0"
