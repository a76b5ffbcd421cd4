"""Bicircular, frame and quasi-graphic matroids.

The most used names are re-exported here; each submodule has the rest.
"""

from .biased import (BiasedGraph, BraceletFunction, bracelet, bracelets, check_theta_property, cycle_matroid,
                     frame_matroid, is_framework, is_proper, quasigraphic_matroid)
from .bicircular import (LoopBiasedGraph, balloons, balloons_and_lines, bicircular_matroid, classify_graph_type,
                         co_graph, lines, loop_sum, representation_closure, roll, rotate)
from .catalog import Catalog
from .decide import (DecisionReport, ExcludedMinorReport, element_bound, is_bicircular, matroid_type,
                     rank2_excluded_minors, rank_bound, verify_excluded_minor)
from .errors import BicircularError, InvalidInput, InvalidOperation, NotFound, ParseError, ResourceLimit
from .matroid import CircuitMatroid, direct_sum, is_isomorphic, parallel_connection, two_sum
from .multigraph import MultiGraph, bicircular_rank, enumerate_bicycles, enumerate_multigraphs

__version__ = "0.1.0"
