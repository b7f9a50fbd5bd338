# core/expressions.py
"""
Slope expressions accepted on the command line.

Grammar: numbers, the variable `mu`, the constants `e` and `pi`, the
operators + - * / and ^ (power, right associative, ** also accepted),
parentheses, and the functions exp, log and sqrt. Evaluation is vectorized
over numpy arrays.
"""

import ast
import logging

import numpy as np

from core.exceptions import ExpressionError

logger = logging.getLogger(__name__)

VARIABLE = 'mu'

FUNCTIONS = {
    'exp': np.exp,
    'log': np.log,
    'sqrt': np.sqrt,
}

CONSTANTS = {
    'e': np.e,
    'pi': np.pi,
}

_BINARY = {
    ast.Add: np.add,
    ast.Sub: np.subtract,
    ast.Mult: np.multiply,
    ast.Div: np.divide,
    ast.Pow: np.power,
}

_UNARY = {
    ast.UAdd: np.positive,
    ast.USub: np.negative,
}


def _compile(node):
    if isinstance(node, ast.Expression):
        return _compile(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        value = float(node.value)
        return lambda mu: value
    if isinstance(node, ast.Name):
        if node.id == VARIABLE:
            return lambda mu: mu
        if node.id in CONSTANTS:
            value = CONSTANTS[node.id]
            return lambda mu: value
        raise ExpressionError(f"unknown name '{node.id}'")
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        op = _BINARY[type(node.op)]
        left, right = _compile(node.left), _compile(node.right)
        return lambda mu: op(left(mu), right(mu))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        op = _UNARY[type(node.op)]
        operand = _compile(node.operand)
        return lambda mu: op(operand(mu))
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
            raise ExpressionError(f"unknown function in '{ast.unparse(node)}'")
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError(f"{node.func.id} takes exactly one argument")
        func = FUNCTIONS[node.func.id]
        argument = _compile(node.args[0])
        return lambda mu: func(argument(mu))
    raise ExpressionError(f"unsupported syntax '{ast.unparse(node)}'")


def parse_expression(text: str):
    """Compile `text` into a vectorized function of mu."""
    if not text or not text.strip():
        raise ExpressionError("empty expression")
    source = text.replace('^', '**').replace('μ', VARIABLE)
    try:
        tree = ast.parse(source, mode='eval')
    except SyntaxError as err:
        raise ExpressionError(f"cannot parse '{text}': {err.msg}") from err
    compiled = _compile(tree)

    def evaluate(mu):
        mu = np.asarray(mu, dtype=float)
        with np.errstate(all='ignore'):
            return np.broadcast_to(np.asarray(compiled(mu), dtype=float), mu.shape)

    logger.debug("compiled slope expression %r", text)
    return evaluate


def parse_endpoint(text) -> float:
    """A domain endpoint: a number, an expression without mu, or inf."""
    if isinstance(text, (int, float)):
        return float(text)
    token = str(text).strip().lower()
    if token in ('inf', '+inf', 'infinity'):
        return np.inf
    if token in ('-inf', '-infinity'):
        return -np.inf
    try:
        return float(token)
    except ValueError:
        pass
    value = parse_expression(token)(0.0)
    value = float(value)
    if np.isnan(value):
        raise ExpressionError(f"endpoint '{text}' is not a number")
    return value
