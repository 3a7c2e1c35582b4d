"""Maps on the cubic surfaces, cluster coordinates and the verification harness."""

from .cluster import (ClusterState, LaurentReport, cluster_coord, cluster_coord_polynomial,
                      cluster_sequence_laurent, cluster_values, exchange_defects)
from .harness import (EQUAL, INCONCLUSIVE, REGISTRY, UNEQUAL, GeneratorWord, Orbit, Verdict,
                      compare_maps, orbit)
from .maps import *  # noqa: F401,F403
from .maps import SurfaceMap, compose_all, identity
