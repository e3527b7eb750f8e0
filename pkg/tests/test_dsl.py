import cmath
import math
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from diraclogic.algebra import DeltaNormalized, Finite, states_close
from diraclogic.dsl import AmplitudeV, RealV, StateV, evaluate, parse, parse_text, to_source, tokenize
from diraclogic.dsl import ast
from diraclogic.errors import (DivergentIntegral, KindError, LexError, NameResolutionError,
                               NonpositiveWidth, NotFinite, ParseError)
from diraclogic.operators import gaussian_state

CORPUS = sorted((Path(__file__).parent.parent / "scripts").glob("*.dcl"))


def kinds(text):
    return [t.kind for t in tokenize(text)]


def test_tokenize_braket():
    assert kinds("<p(1)|p(2)>") == ["bra-open", "ident", "lparen", "number", "rparen", "pipe",
                                    "ident", "lparen", "number", "rparen", "angle-close"]
    assert tokenize("") == []


def test_tokenize_ket_and_keywords():
    toks = tokenize("evolve(harmonic(1, 2), pi/4) |gauss(0,1,0)>")
    assert [t.lexeme for t in toks if t.kind == "keyword"] == ["evolve", "harmonic", "pi"]
    assert "ket-open" in [t.kind for t in toks]


def test_nested_pipes():
    assert kinds("<g | |p(1)>>") == ["bra-open", "ident", "pipe", "ket-open", "ident", "lparen",
                                     "number", "rparen", "angle-close", "angle-close"]


def test_lex_error_position():
    with pytest.raises(LexError) as info:
        tokenize("|p(1⟩")
    assert info.value.position == (1, 5)
    with pytest.raises(LexError) as info:
        tokenize("let a = 1;\n  a > 2")
    assert info.value.position == (2, 5)


def test_comments_and_numbers():
    toks = tokenize("# hello\n1.5e-3 .25 2pi  # trailing")
    assert [(t.kind, t.lexeme) for t in toks] == [("number", "1.5e-3"), ("number", ".25"),
                                                   ("number", "2"), ("keyword", "pi")]
    assert toks[0].position == (2, 1)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_positions_increase(path):
    pos = [t.position for t in tokenize(path.read_text())]
    assert pos == sorted(pos) and len(set(pos)) == len(pos)


def test_parse_let_and_braket():
    prog = parse_text("let g = |gauss(0,1,0)> ; <g|g>")
    assert prog == [ast.Let("g", ast.Ket("gauss", (ast.Num(0), ast.Num(1), ast.Num(0)))),
                    ast.BraKet(ast.Var("g"), ast.Var("g"))]


def test_parse_integrate():
    assert parse_text("E x . |p(1)>") == [ast.Integrate("x", ast.Ket("p", (ast.Num(1),)))]


def test_parse_numbers():
    (n,) = parse_text("-pi/4")
    assert n == ast.Num(-math.pi / 4)
    (n,) = parse_text("2pi")
    assert n == ast.Num(2 * math.pi)
    (b,) = parse_text("3 / 2pi")
    assert b == ast.Num(3 / (2 * math.pi))


def test_parse_precedence():
    (e,) = parse_text("1 + 2 * 3 - 4")
    assert e == ast.BinOp("-", ast.BinOp("+", ast.Num(1), ast.BinOp("*", ast.Num(2), ast.Num(3))), ast.Num(4))
    (e,) = parse_text("P Q |p(1)>")
    assert e == ast.Apply(ast.Momentum(), ast.Apply(ast.Position(), ast.Ket("p", (ast.Num(1),))))


@pytest.mark.parametrize("text,expected", [
    ("<p(1)|", "ket expression"),
    ("<p(1)|p(2)", "angle-close"),
    ("let = 1", "ident"),
    ("W(1) |p(1)>", "comma"),
    ("evolve(Q, 1) |p(1)>", "free"),
    ("1 2", "semi"),
    ("prob(|p(1)>)", "comma"),
    ("1 / 0", "nonzero number"),
    ("1e999", "finite number"),
])
def test_parse_errors(text, expected):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    assert expected in info.value.expected
    line, col = info.value.position
    assert line == 1 and 1 <= col <= len(text) + 1


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_round_trip(path):
    prog = parse_text(path.read_text())
    printed = to_source(prog)
    assert parse_text(printed) == prog
    assert to_source(parse_text(printed)) == printed


def test_corpus_size():
    assert len(CORPUS) >= 20


@given(st.floats(-1e6, 1e6, allow_nan=False), st.floats(0.1, 10))
def test_number_round_trip(a, w):
    prog = [ast.Apply(ast.Weyl(ast.Num(a), ast.Num(-w)), ast.Ket("gauss", (ast.Num(a), ast.Num(w))))]
    assert parse_text(to_source(prog)) == prog


def one(text):
    (_, v), = evaluate(text)
    return v


def test_evaluate_examples():
    assert one("<p(1)|p(2)>") == AmplitudeV(Finite(0j))
    assert one("<p(1)|p(1)>") == AmplitudeV(DeltaNormalized(1 + 0j))
    assert one("prob(|gauss(0,1,0)>, |gauss(0,1,0)>)") == RealV(1.0)
    v = one("evolve(harmonic(1,1), 0.5) |gauss(0,1,0)>")
    g = gaussian_state(0, 1)
    assert states_close(v.state, cmath.exp(-0.25j) * g, 1e-10)


def test_let_scoping_and_outputs():
    out = evaluate("let a = 2; a * 3; let b = a + 1; b")
    assert out == [(1, RealV(6.0)), (3, RealV(3.0))]


def test_named_variables():
    v = one("|gauss(0,1,0)[x]> * |gauss(1,1,0)[y]>")
    assert isinstance(v, StateV) and v.names == ("x", "y")
    v = one("E y . |gauss(0,1,0)[x]> * |gauss(1,1,0)[y]>")
    assert v.names == ("x",)
    v = one("E x . E y . |gauss(0,1,0)[x]> * |gauss(0,1,0)[y]>")
    assert abs(v.amplitude.value - 2 * math.sqrt(math.pi)) < 1e-12


def test_integrate_matches_braket():
    a = one("E x . conj(|gauss(0,1,0)>) * |gauss(0.5,1,0.3)>")
    b = one("<gauss(0,1,0)|gauss(0.5,1,0.3)>")
    assert abs(a.amplitude.value - b.amplitude.value) < 1e-14


def test_scalar_arithmetic():
    assert one("<p(1)|p(1)> * 2") == AmplitudeV(DeltaNormalized(2 + 0j))
    assert one("conj(<x(0.5)|p(2)>)").amplitude.value == pytest.approx(cmath.exp(-1j) / math.sqrt(2 * math.pi))
    assert one("-(2 - 5)") == RealV(3.0)
    assert one("norm(|gauss(0,1,0)> * 2)").value == pytest.approx(2.0)


@pytest.mark.parametrize("text,exc,pos", [
    ("<g|g>", NameResolutionError, (1, 2)),
    ("|q(1)>", NameResolutionError, (1, 1)),
    ("|gauss(0)>", KindError, (1, 1)),
    ("|gauss(0, -1)>", NonpositiveWidth, (1, 1)),
    ("prob(|p(1)>, |p(1)>)", NotFinite, (1, 1)),
    ("E y . |p(1)>", DivergentIntegral, (1, 1)),
    ("1;\n  P 3", KindError, (2, 5)),
    ("let z = 0; 1 / z", KindError, (1, 14)),
    ("<p(1)|p(1)> + <p(1)|p(2)>", NotFinite, (1, 13)),
])
def test_errors_carry_positions(text, exc, pos):
    with pytest.raises(exc) as info:
        evaluate(text)
    assert info.value.position == pos


def test_evaluate_accepts_parsed_program():
    prog = parse(tokenize("<p(1)|p(2)>"))
    assert evaluate(prog) == evaluate("<p(1)|p(2)>")


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_evaluates(path):
    assert evaluate(path.read_text())
