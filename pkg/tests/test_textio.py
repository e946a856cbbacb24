from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wpcl.errors import DomainError, ParseError
from wpcl.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Close,
    Coalesce,
    Const,
    FullVal,
    Implies,
    Inter,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    PclClose,
    Star,
    Union,
    Uplus,
    configuration,
    monomial_formula,
)
from wpcl.normal_form import Constant, Terms, make_terms
from wpcl.pvm import MAX_AVG_PLUS, NEG_INF
from wpcl.textio import (
    parse_configuration,
    parse_file,
    parse_fnf,
    parse_pcl,
    parse_pil,
    parse_wpcl,
    print_configuration,
    print_fnf,
    print_pcl,
    print_pil,
    print_table,
    print_wpcl,
)

from .strategies import MONOIDS, PORT_SETS, pcl, pil, wpcl

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_parse_examples():
    assert parse_wpcl("w(2) (#) w(4)") == Uplus(Const(F(2)), Const(F(4)))
    assert parse_wpcl("star( w(2) (+) [m: p . !q] )") == Star(Oplus(Const(F(2)), And(p, Neg(q))))
    assert parse_wpcl("close(w(1))") == Close(Const(F(1)))
    assert parse_wpcl("fullval(w(1) (x) [p])") == FullVal(Otimes(Const(F(1)), p))


def test_monomial_with_ports_is_full():
    assert parse_wpcl("[m: p]", ("p", "q", "r")) == monomial_formula({"p"}, ("p", "q", "r"))
    assert parse_pil("m: p . q", ("p", "q", "r")) == monomial_formula({"p", "q"}, ("p", "q", "r"))
    with pytest.raises(ParseError):
        parse_pil("m: p . !p", ("p", "q"))
    with pytest.raises(ParseError):
        parse_pil("m: !p", ("p", "q"))


def test_precedence():
    assert parse_wpcl("w(1) (+) w(2) (#) w(3) (x) w(4)") == Oplus(
        Const(F(1)), Uplus(Const(F(2)), Otimes(Const(F(3)), Const(F(4))))
    )
    assert parse_wpcl("w(1) (+) w(2) (+) w(3)") == Oplus(Oplus(Const(F(1)), Const(F(2))), Const(F(3)))
    assert parse_pil("!p . q | r") == Or(And(Neg(p), q), r)
    assert parse_pcl("p + q U r") == Union(Coalesce(p, q), r)
    assert parse_pcl("p => q => r") == Implies(p, Implies(q, r))
    assert parse_pcl("neg p ^ close(q)") == Inter(Not(p), PclClose(q))
    assert parse_pcl("(p + q) + r") == Coalesce(Coalesce(p, q), r)
    assert parse_pcl("p + (q + r)") == Coalesce(p, Coalesce(q, r))
    assert parse_pil("true | false") == Or(TRUE, FALSE)


def test_values():
    assert parse_wpcl("w(-5/3)") == Const(F(-5, 3))
    assert parse_wpcl("w(-inf)") == Const(NEG_INF)
    assert print_wpcl(parse_wpcl("w(3/2)")) == "w(3/2)"
    assert print_wpcl(parse_wpcl("w(6/4)")) == "w(3/2)"


def test_configurations():
    assert parse_configuration("{ {p}, {q} }", ("p", "q")) == configuration({"p"}, {"q"})
    assert print_configuration(configuration({"q", "p"}, {"p"})) == "{{p},{p,q}}"
    with pytest.raises(ParseError, match="configuration must be nonempty"):
        parse_configuration("{ }")
    with pytest.raises(ParseError, match="interaction must be nonempty"):
        parse_configuration("{ {} }")
    with pytest.raises(ParseError, match="unknown port"):
        parse_configuration("{ {x} }", ("p", "q"))


def test_error_carries_span():
    with pytest.raises(ParseError) as e:
        parse_wpcl("w(2) (#) ")
    assert e.value.span is not None
    assert "^" in str(e.value)
    with pytest.raises(ParseError):
        parse_wpcl("w(1) w(2)")
    with pytest.raises(ParseError):
        parse_wpcl("[x]", ("p",))


def test_keywords_are_not_ports():
    with pytest.raises(ParseError):
        parse_pil("U")


def test_fnf_text():
    g = configuration({"p"}, {"q"})
    t = make_terms({g: F(6)}, MAX_AVG_PLUS)
    assert print_fnf(t) == "6 @ {{p},{q}}"
    assert print_fnf(Constant(NEG_INF)) == "CONST -inf"
    assert print_fnf(Terms()) == "ZERO"
    for fnf in (t, Constant(NEG_INF), Terms()):
        assert parse_fnf(print_fnf(fnf)) == fnf
    with pytest.raises(DomainError):
        parse_fnf("1 @ {{p}}\n2 @ {{p}}")


def test_table_text():
    g1, g2 = configuration({"q"}), configuration({"p"})
    assert print_table({g1: F(1), g2: F(2)}) == "2 @ {{p}}\n1 @ {{q}}"


def test_file_format():
    ports, fs = parse_file("ports q, p;\n// a comment\nw(1);\n[m: p] (x) w(2);\n")
    assert ports == ("p", "q")
    assert fs[1] == Otimes(monomial_formula({"p"}, ports), Const(F(2)))
    with pytest.raises(ParseError):
        parse_file("w(1);")
    with pytest.raises(ParseError):
        parse_file("ports p, p; w(1);")


CORPUS = [
    ("w(1)(+)w(2)", "w(1) (+) w(2)"),
    ("((w(1)))", "w(1)"),
    ("w(1) (x) (w(2) (x) w(3))", "w(1) (x) (w(2) (x) w(3))"),
    ("[ (p) ]", "[p]"),
    ("[p . (q . r)]", "[p . (q . r)]"),
    ("[neg (p + q)]", "[neg (p + q)]"),
    ("star(close([true]))", "star(close([true]))"),
]


@pytest.mark.parametrize("text, canonical", CORPUS)
def test_canonical_rendering(text, canonical):
    assert print_wpcl(parse_wpcl(text)) == canonical


@given(st.data())
def test_round_trip_wpcl(data):
    ports = data.draw(st.sampled_from(PORT_SETS))
    m = data.draw(st.sampled_from(MONOIDS))
    z = data.draw(wpcl(ports, m, max_leaves=8))
    assert parse_wpcl(print_wpcl(z)) == z


@given(st.data())
def test_round_trip_pcl_and_pil(data):
    ports = data.draw(st.sampled_from(PORT_SETS))
    f = data.draw(pcl(ports, max_leaves=6))
    assert parse_pcl(print_pcl(f)) == f
    g = data.draw(pil(ports, max_leaves=6))
    assert parse_pil(print_pil(g)) == g
