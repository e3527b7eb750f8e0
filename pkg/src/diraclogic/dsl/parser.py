"""Recursive-descent parser.

    program := [stmt (";" stmt)* [";"]]
    stmt    := "let" ident "=" expr | expr
    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := "-" factor | opexpr factor | primary
    primary := num | braket | ket | integ | call | ident ["(" args ")"] | "(" expr ")"
    braket  := "<" expr "|" expr ">"
    ket     := "|" ident ["(" args ")"] ["[" ident "]"] ">"
    integ   := "E" ident "." expr
    opexpr  := "W" "(" num "," num ")" | "P" | "Q" | "evolve" "(" ham "," num ")"
    ham     := ("free" | "harmonic") "(" args ")"
    call    := ("prob" | "norm" | "conj") "(" expr ["," expr] ")"
    num     := ["-"] atom ["/" atom] ;  atom := number ["pi"] | "pi"
"""
from __future__ import annotations

import math

from ..errors import ParseError
from . import ast
from .lexer import tokenize

_OPERATORS = {"W", "P", "Q", "evolve"}


class Parser:
    def __init__(self, tokens):
        self.tokens = list(tokens)
        self.i = 0

    # token helpers ------------------------------------------------------------
    def peek(self, offset=0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def at(self, kind, lexeme=None, offset=0):
        tok = self.peek(offset)
        return tok is not None and tok.kind == kind and (lexeme is None or tok.lexeme == lexeme)

    def position(self):
        tok = self.peek()
        if tok is not None:
            return tok.position
        if self.tokens:
            last = self.tokens[-1]
            return (last.line, last.column + len(last.lexeme))
        return (1, 1)

    def fail(self, expected, what=None):
        tok = self.peek()
        found = "end of input" if tok is None else repr(tok.lexeme)
        what = what or " or ".join(expected)
        raise ParseError(f"expected {what}, found {found}", self.position(), expected)

    def expect(self, kind, lexeme=None, what=None):
        if not self.at(kind, lexeme):
            self.fail([lexeme or kind], what)
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    # grammar ------------------------------------------------------------------------
    def program(self):
        stmts = []
        while self.peek() is not None:
            stmts.append(self.stmt())
            if self.peek() is None:
                break
            self.expect("semi", what="';' between statements")
        return stmts

    def stmt(self):
        if self.at("keyword", "let"):
            pos = self.expect("keyword", "let").position
            name = self.expect("ident", what="binding name").lexeme
            self.expect("equals", what="'='")
            return ast.Let(name, self.expr(), pos=pos)
        return self.expr()

    def expr(self):
        left = self.term()
        while self.at("plus") or self.at("minus"):
            tok = self.tokens[self.i]
            self.i += 1
            left = ast.BinOp(tok.lexeme, left, self.term(), pos=tok.position)
        return left

    def term(self):
        left = self.factor()
        while self.at("star") or self.at("slash"):
            tok = self.tokens[self.i]
            self.i += 1
            left = ast.BinOp(tok.lexeme, left, self.factor(), pos=tok.position)
        return left

    def factor(self):
        tok = self.peek()
        if tok is None:
            self.fail(["expression"])
        if tok.kind == "minus":
            nxt = self.peek(1)
            if nxt is not None and (nxt.kind == "number" or (nxt.kind == "keyword" and nxt.lexeme == "pi")):
                return self.num()
            self.i += 1
            return ast.Neg(self.factor(), pos=tok.position)
        if tok.kind == "keyword" and tok.lexeme in _OPERATORS:
            op = self.opexpr()
            return ast.Apply(op, self.factor(), pos=op.pos)
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok is None:
            self.fail(["expression"])
        if tok.kind == "number" or (tok.kind == "keyword" and tok.lexeme == "pi"):
            return self.num()
        if tok.kind == "bra-open":
            return self.braket()
        if tok.kind == "ket-open":
            return self.ket()
        if tok.kind == "keyword" and tok.lexeme == "E":
            return self.integ()
        if tok.kind == "keyword" and tok.lexeme in ("prob", "norm", "conj"):
            return self.call()
        if tok.kind == "ident":
            self.i += 1
            if self.at("lparen"):
                return ast.Ket(tok.lexeme, self.args(), None, pos=tok.position)
            return ast.Var(tok.lexeme, pos=tok.position)
        if tok.kind == "lparen":
            self.i += 1
            inner = self.expr()
            self.expect("rparen", what="')'")
            return inner
        self.fail(["expression"])

    def braket(self):
        pos = self.expect("bra-open").position
        bra = self.expr()
        self.expect("pipe", what="'|'")
        if self.peek() is None or self.at("angle-close"):
            self.fail(["ket expression"])
        ket = self.expr()
        self.expect("angle-close", what="'>'")
        return ast.BraKet(bra, ket, pos=pos)

    def ket(self):
        pos = self.expect("ket-open").position
        name = self.expect("ident", what="ket name").lexeme
        args = self.args() if self.at("lparen") else None
        var = None
        if self.at("lbracket"):
            self.i += 1
            var = self.expect("ident", what="variable name").lexeme
            self.expect("rbracket", what="']'")
        self.expect("angle-close", what="'>'")
        if args is None:
            if var is not None:
                self.fail(["'('"], "constructor arguments before a variable name")
            return ast.Var(name, pos=pos)
        return ast.Ket(name, args, var, pos=pos)

    def args(self):
        self.expect("lparen", what="'('")
        out = []
        if not self.at("rparen"):
            out.append(self.num())
            while self.at("comma"):
                self.i += 1
                out.append(self.num())
        self.expect("rparen", what="')'")
        return tuple(out)

    def integ(self):
        pos = self.expect("keyword", "E").position
        var = self.expect("ident", what="integration variable").lexeme
        self.expect("dot", what="'.'")
        return ast.Integrate(var, self.expr(), pos=pos)

    def call(self):
        tok = self.expect("keyword")
        self.expect("lparen", what="'('")
        first = self.expr()
        if tok.lexeme == "prob":
            self.expect("comma", what="','")
            second = self.expr()
            self.expect("rparen", what="')'")
            return ast.Prob(first, second, pos=tok.position)
        self.expect("rparen", what="')'")
        cls = ast.Norm if tok.lexeme == "norm" else ast.Conj
        return cls(first, pos=tok.position)

    def opexpr(self):
        tok = self.expect("keyword")
        if tok.lexeme == "P":
            return ast.Momentum(pos=tok.position)
        if tok.lexeme == "Q":
            return ast.Position(pos=tok.position)
        if tok.lexeme == "W":
            self.expect("lparen", what="'('")
            a = self.num()
            self.expect("comma", what="','")
            b = self.num()
            self.expect("rparen", what="')'")
            return ast.Weyl(a, b, pos=tok.position)
        self.expect("lparen", what="'('")
        htok = self.peek()
        if not (self.at("keyword", "free") or self.at("keyword", "harmonic")):
            self.fail(["free", "harmonic"], "Hamiltonian 'free(...)' or 'harmonic(...)'")
        self.i += 1
        ham = ast.Ham(htok.lexeme, self.args(), pos=htok.position)
        self.expect("comma", what="','")
        t = self.num()
        self.expect("rparen", what="')'")
        return ast.EvolveOp(ham, t, pos=tok.position)

    def num(self):
        pos = self.position()
        sign = 1.0
        if self.at("minus"):
            self.i += 1
            sign = -1.0
        value = self.atom()
        # "/" binds into the literal only when a number follows (pi/4)
        if self.at("slash") and (self.at("number", offset=1) or self.at("keyword", "pi", offset=1)):
            self.i += 1
            slash = self.position()
            denom = self.atom()
            if denom == 0:
                raise ParseError("division by zero in a number literal", slash, ("nonzero number",))
            value /= denom
        return ast.Num(sign * value, pos=pos)

    def atom(self):
        if self.at("keyword", "pi"):
            self.i += 1
            return math.pi
        tok = self.expect("number", what="number")
        value = float(tok.lexeme)
        if not math.isfinite(value):
            raise ParseError(f"number {tok.lexeme} is out of range", tok.position, ("finite number",))
        nxt = self.peek()
        if nxt is not None and nxt.kind == "keyword" and nxt.lexeme == "pi" and \
                nxt.line == tok.line and nxt.column == tok.column + len(tok.lexeme):
            self.i += 1
            value *= math.pi
        return value


def parse(tokens) -> list:
    return Parser(tokens).program()


def parse_text(text: str) -> list:
    return parse(tokenize(text))
