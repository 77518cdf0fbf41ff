from src.expr.ast import Expr, Identity, ParamRange
from src.expr.evaluator import Evaluator, eval_int, eval_mono, evaluate
from src.expr.parser import FUNCTIONS, RESERVED, parse, parse_expr, parse_identities
from src.expr.printer import print_expr, print_identity, print_int, print_mono

__all__ = [
    "Expr", "Identity", "ParamRange", "Evaluator", "eval_int", "eval_mono", "evaluate", "FUNCTIONS",
    "RESERVED", "parse", "parse_expr", "parse_identities", "print_expr", "print_identity", "print_int",
    "print_mono",
]
