"""Workbench for first-order transductions on finite colored graphs."""

from .errors import (BudgetExceededError, EmptyComparisonError, FotransError,
                     FormulaSyntaxError, NoStarColoringError, SizeLimitError,
                     UnboundVariableError)
from .graphs import (Ball, ColoredGraph, Graph, Subgraph, are_isomorphic, ball,
                     colored_ball, complete, complete_binary_tree,
                     complete_join, copy_operation, cycle, diameter,
                     disjoint_union, distance, edgeless, enumerate_subgraphs,
                     graph_from_text, graph_to_text, graphs_up_to, grid,
                     half_graph, is_connected, lexicographic_product, loc_r,
                     nonisomorphic_graphs, path, power, powerset_graph, star)
from .invariants import (PatternWitness, bandwidth, half_graph_pattern_max,
                         independence_property, order_property, pathwidth,
                         star_chromatic_number, treewidth)
from .logic import (FALSE, TRUE, Formula, LocalityReport, evaluate, free_vars,
                    is_r_local_on_corpus, is_strongly_r_local_on_corpus, parse,
                    quantifier_rank, solution_set, to_text, zeta_formula)
from .monotone import (MonotoneExpansion, StarColoring, build_expansion,
                       find_star_coloring, monotone_eta, verify_monotone)
from .normal_form import (BasicLocalSentence, GaifmanForm, GaifmanTransduction,
                          NearLeaf, NormalFormDecomposition, ProductLeaf,
                          SentenceLeaf, UnaryLocalLeaf, decompose,
                          far_pair_perturbation, far_products,
                          immersive_edge_formula, marker_edge_formula,
                          verify_decomposition)
from .transduction import (Copy, Expand, Interpret, Interpretation,
                           SubsetComplement, Transduction, WitnessResult,
                           apply_with_coloring, compose, distance_shrink_ratio,
                           identity_transduction, output_set, perturbation,
                           subsumes_on_corpus, witness_search)

__version__ = "0.1.0"
