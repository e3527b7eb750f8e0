"""Tokenizer for ``.dcl`` scripts.

``|`` is context dependent: inside ``< ... |`` it separates bra from ket,
elsewhere it opens a ket that ``>`` closes.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset({"let", "E", "W", "P", "Q", "evolve", "free", "harmonic",
                      "prob", "norm", "conj", "pi"})

SIMPLE = {
    "(": "lparen", ")": "rparen", ",": "comma", ".": "dot", "=": "equals", ";": "semi",
    "+": "plus", "-": "minus", "*": "star", "/": "slash", "[": "lbracket", "]": "rbracket",
}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int

    @property
    def position(self):
        return (self.line, self.column)


def tokenize(text: str) -> list:
    tokens = []
    # open angle constructs: [kind, paren depth, position]
    stack: list[list] = []
    depth = 0
    i = 0
    line, col = 1, 1
    n = len(text)

    def emit(kind, lexeme, pos):
        tokens.append(Token(kind, lexeme, *pos))

    while i < n:
        ch = text[i]
        pos = (line, col)
        if ch == "\n":
            i += 1
            line, col = line + 1, 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE" and j + 1 < n and (text[j + 1].isdigit() or
                                                          (text[j + 1] in "+-" and j + 2 < n and text[j + 2].isdigit())):
                j += 2
                while j < n and text[j].isdigit():
                    j += 1
            emit("number", text[i:j], pos)
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            emit("keyword" if word in KEYWORDS else "ident", word, pos)
            col += j - i
            i = j
            continue
        if ch == "<":
            emit("bra-open", ch, pos)
            stack.append(["bra", depth, pos])
        elif ch == "|":
            if stack and stack[-1][0] == "bra" and stack[-1][1] == depth:
                emit("pipe", ch, pos)
                stack[-1][0] = "braket"
            else:
                emit("ket-open", ch, pos)
                stack.append(["ket", depth, pos])
        elif ch == ">":
            if not stack or stack[-1][0] == "bra" or stack[-1][1] != depth:
                raise LexError("unexpected '>'", pos)
            emit("angle-close", ch, pos)
            stack.pop()
        elif ch in SIMPLE:
            kind = SIMPLE[ch]
            if kind == "lparen":
                depth += 1
            elif kind == "rparen":
                depth -= 1
                if stack and depth < stack[-1][1]:
                    raise LexError("')' closes a parenthesis opened outside the bracket", pos)
            emit(kind, ch, pos)
        else:
            raise LexError(f"unexpected character {ch!r}", pos)
        i += 1
        col += 1
    # unclosed brackets are left to the parser, which knows what was expected
    return tokens
