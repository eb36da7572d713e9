"""Exact algebra of graph path groupoids.

Basic-set calculus on boundary paths, the convolution algebra in canonical
form, the generator family with its relations, acyclic vertex-set collapse
with certified checks, and the 2x2 context calculus with surjectivity
witnesses.  Everything is exact and deterministic; see the CLI in
``steinalg.cli`` for the command-line entry points.
"""

from .collapse import (CollapseCertificate, CollapseSpec, check_phi_fin_image,
                       collapse, collapsed_preimage, first_hit_extensions,
                       phi_fin, phi_pair, pointed_groupoid_iso_check,
                       validate_collapsible)
from .cylinder import (BasicBisection, GroupoidProbe, PathPair, as_bisection,
                       boundary_tails, compose_pairs, disjointify,
                       enumerate_probes, expand, intersect_bisections,
                       intersect_pairs, invert, invert_pair, is_empty, member,
                       pair_contains, probes_in, subtract_bisections,
                       subtract_pairs)
from .graph import (Edge, Graph, GraphFormatError, Path, VertexSubset, concat,
                    enumerate_paths, is_acyclic, is_prefix, load_graph,
                    load_graph_file, serialize_graph, sources, strip_prefix,
                    subgraph, vertex_path)
from .leavitt import (WordSyntaxError, check_ck_relations, eval_word,
                      generator, indicator_as_word, parse_word, render_word)
from .morita import (Corner, CornerSupportError, LinkingElement,
                     LinkingInvariantError, MoritaWitness, Transversal,
                     check_transversal, corner_of, embed, eq_ops_check,
                     least_connectors, linking_add, linking_convolve,
                     linking_zero, morita_report, pairs_to_depth, phi, psi,
                     surjectivity_witness)
from .report import Report
from .rings import (CoefficientRing, IntegerRing, IntegersMod, RationalRing,
                    ring_from_spec)
from .steinberg import (GradedDecomposition, SteinbergElement, add,
                        canonicalize, convolve, evaluate, from_terms, grade,
                        graded_component, indicator, negate,
                        oracle_convolve_at, scale, zero)

__version__ = "0.1.0"
