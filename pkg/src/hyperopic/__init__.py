"""Hyperopic Cops and Robbers: exact solving, strategy certificates and density chains."""

from .graphs import Graph, GraphError, build_graph, generate, metrics
from .rules import CAPTURED, SEEN, UNSEEN, Observation
from .solver import (Limits, SearchLimitExceeded, classical_cop_number, classical_copwin,
                     extract_strategy, hyperopic_cop_number, hyperopic_copwin)

__version__ = "0.1.0"
