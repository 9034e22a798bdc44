"""Exact algorithms around graph entanglement: the cops and thief game,
cyclicity, connectivity, Tutte decompositions and molecules."""

from .errors import BudgetError, EntangleError, InputError, InvariantError, ParseError
from .graph import Digraph, Graph, MultiGraph

__all__ = ["BudgetError", "EntangleError", "InputError", "InvariantError", "ParseError",
           "Digraph", "Graph", "MultiGraph"]
__version__ = "0.1.0"
