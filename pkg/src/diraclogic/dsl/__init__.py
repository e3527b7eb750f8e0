"""The ``.dcl`` scripting language."""
from .evaluator import AmplitudeV, RealV, StateV, evaluate
from .lexer import Token, tokenize
from .parser import parse, parse_text
from .printer import to_source

__all__ = ["AmplitudeV", "RealV", "StateV", "Token", "evaluate", "parse", "parse_text",
           "to_source", "tokenize"]
