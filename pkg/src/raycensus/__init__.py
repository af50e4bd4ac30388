"""Graph census certifying chi_f(G) <= Xi(G) for all small graphs.

The pipeline enumerates nonisomorphic graphs, computes exact fractional
chromatic numbers, and discards every graph through a cascade of
dimension-bound filters; zero survivors at an order certifies that the
fractional chromatic number never exceeds the faithful-orthogonal-
representation dimension bound at that order.
"""

from .graphs import Graph
from .canon import canonical_form, canonicalize, are_isomorphic
from .graph6 import decode, encode, read_graph6, write_graph6, Graph6Error
from .generate import enumerate_order, enumerate_shard, ingest_graph6
from .cliques import (max_clique_size, maximal_independent_sets,
                      find_pair_structure, IndependentSetFamily,
                      PairStructureWitness)
from .fracchromatic import (Rational, LpCertificate, frac_chromatic,
                            frac_chromatic_reconstructed, verify_certificate)
from .induced import (FILTER_TABLE, FilterGraph, Embedding,
                      find_induced_embedding, has_any_filter_graph)
from .orthrep import (OrthRep, ForReport, verify_for, search_for,
                      xi_lower_bound_pairs, join_reps)
from .census import (FilterVerdict, CensusReport, classify, run_census,
                     emit_survivors, CASCADE)

__version__ = "0.1.0"
