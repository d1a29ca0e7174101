"""Exact 1-page and 2-page book crossing numbers and MSO2 model checking for small graphs."""
from .bookdraw import BookDrawing, CrossingDiagram, cr1_exact, cr2_exact, crossings, enumerate_crossing_diagrams
from .checker.courcelle import eval_courcelle, model_check
from .checker.naive import BudgetExceeded, EvalBudget, eval_naive
from .graph import Graph, GraphError, SizeLimitError, parse_graph
from .mso2.syntax import FormulaError, parse_formula
from .treewidth import treewidth_exact

__version__ = "0.1.0"

__all__ = [
    "BookDrawing", "BudgetExceeded", "CrossingDiagram", "EvalBudget", "FormulaError", "Graph", "GraphError",
    "SizeLimitError", "__version__", "cr1_exact", "cr2_exact", "crossings", "enumerate_crossing_diagrams",
    "eval_courcelle", "eval_naive", "model_check", "parse_formula", "parse_graph", "treewidth_exact",
]
