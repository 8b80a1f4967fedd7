"""Domination in token graphs of stars and complete graphs."""

from .constructions import (complete_f2_construction, complete_f3_construction,
                            complete_fk_construction, smallest_prime_factor,
                            star_f2_construction, star_fk_construction, theoretical_gamma)
from .coverings import (CoveringDesign, bose_sts, greedy_cover, skolem_sts,
                        trivial_cover_lower_bound, verify_cover)
from .domination import (BoundsReport, DominationCertificate, degree_bounds,
                         exact_min_dominating, greedy_dominating, greedy_maximal_independent,
                         is_dominating, mantel_lower_bound_f3)
from .errors import InvalidParameterError, ResourceLimitError
from .graphs import (BaseGraph, Graph, TokenGraph, build_complete, build_graph, build_star,
                     build_token_graph, rank_subset, token_neighbors, unrank_subset)

__version__ = "0.1.0"
