from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lpa_ideals.field_poly import (
    QQ,
    DegreeBoundError,
    Field,
    Poly,
    PolyParseError,
    conjugate,
    factor,
    gcd,
    is_irreducible,
    is_squarefree,
    lcm,
    normalize,
    parse_poly,
    squarefree_decomposition,
    squarefree_part,
)

F3, F5 = Field.fp(3), Field.fp(5)
X = sympy.Symbol("x")


def P(text, field=QQ):
    return parse_poly(text, field)


def sym_factor(f: Poly):
    """Factor with sympy; return sorted (constant-first coeffs, exponent)."""
    kw = {"modulus": f.field.p} if f.field.p else {}
    expr = sum(sympy.Rational(a.numerator, a.denominator) * X**i if f.field.p == 0 else int(a) * X**i
               for i, a in enumerate(f.coeffs))
    _, facs = sympy.factor_list(expr, X, **kw)
    out = []
    for q, m in facs:
        q = sympy.Poly(q, X, **kw).monic()
        cs = list(reversed(q.all_coeffs()))
        if f.field.p:
            cs = [int(c) % f.field.p for c in cs]
        else:
            cs = [Fraction(int(c.p), int(c.q)) for c in cs]
        out.append((tuple(cs), m))
    return sorted(out)


def ours(f: Poly):
    return sorted((p.coeffs, m) for p, m in factor(f))


# -- fields and parsing

def test_field_parse():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:5") == F5
    assert Field.parse("GF(5)") == F5
    with pytest.raises(ValueError):
        Field.parse("Fp:6")
    with pytest.raises(ValueError):
        Field.fp(2**31 + 11)


def test_parse_and_print_round_trip():
    f = P("x^2 - 3/2*x + 1")
    assert f.coeffs == (1, Fraction(-3, 2), 1)
    assert str(f) == "x^2 - 3/2*x + 1"
    assert parse_poly(str(f)) == f
    g = parse_poly("x^2+4x+3 mod 5")
    assert g.field == F5 and g.coeffs == (3, 4, 1)
    assert parse_poly(str(g)) == g
    assert P("(1+x)^2") == P("x**2 + 2*x + 1")
    assert P("2(x+1)x") == P("2x^2 + 2x")


def test_parse_errors():
    with pytest.raises(PolyParseError):
        P("x + $")
    with pytest.raises(PolyParseError):
        P("")
    with pytest.raises(PolyParseError):
        parse_poly("x mod 5", F3)


def test_json_coefficients():
    f = P("x^2 - 3/2*x + 1")
    assert f.to_json() == ["1", "-3/2", "1"]
    assert Poly.from_json(QQ, ["1", "-3/2", "1"]) == f


# -- normalize

def test_normalize_examples():
    assert normalize(P("3x^3+3x^2")) == P("x+1")
    assert normalize(P("x-1")) == P("x-1")
    assert normalize(parse_poly("2x^2+4x mod 5")) == parse_poly("x+2 mod 5")
    with pytest.raises(ValueError):
        normalize(Poly(QQ, ()))


def test_gcd_lcm_examples():
    assert gcd(P("(x+1)^2(x+2)"), P("(x+1)(x+3)")) == P("x+1")
    assert gcd(P("2x+2"), Poly(QQ, ())) == P("x+1")
    assert gcd(P("x+1"), P("x+2")).is_one()


def test_squarefree_examples():
    assert squarefree_part(P("(x+1)^2(x+2)")) == P("x^2+3x+2")
    assert squarefree_part(P("x-1")) == P("x-1")
    assert squarefree_part(parse_poly("x^3+1 mod 3")) == parse_poly("x+1 mod 3")
    assert squarefree_decomposition(P("(x-1)^2(x+1)^3(x+2)^3")) == [
        (P("x-1"), 2), (P("(x+1)(x+2)"), 3)]


def test_factor_examples():
    assert factor(P("(x-1)^2")) == [(P("x-1"), 2)]
    assert factor(P("x^2+1")) == [(P("x^2+1"), 1)]
    assert factor(parse_poly("x^2+1 mod 5")) == [(parse_poly("x+2 mod 5"), 1), (parse_poly("x+3 mod 5"), 1)]
    assert conjugate(P("2x^2+2x"), P("x+1"))
    assert is_irreducible(P("x+1"))
    assert not is_irreducible(P("(x+1)(x+2)"))


def test_factor_degree_bound():
    with pytest.raises(DegreeBoundError):
        factor(P("x^13 + 1"))
    assert len(factor(P("x^13 + 1"), degree_bound=13)) == 2


def test_factor_cyclotomic_and_swinnerton_dyer_like():
    # x^12 - 1 splits into cyclotomic factors of degrees 1,1,2,2,2,4
    degs = sorted(p.degree for p, _ in factor(P("x^12 - 1")))
    assert degs == [1, 1, 2, 2, 2, 4]
    # x^4 + 1 is irreducible over Q but splits mod every prime
    assert is_irreducible(P("x^4+1"))
    assert not is_irreducible(parse_poly("x^4+1 mod 5"))


def test_factor_char_two():
    F2 = Field.fp(2)
    f = parse_poly("x^4 + x + 1 mod 2")
    assert is_irreducible(f)
    g = parse_poly("(x^2+x+1)^2 (x+1) mod 2")
    assert ours(g) == sym_factor(g)


# -- properties

def polys(field, max_degree=8):
    if field.p:
        coeff = st.integers(0, field.p - 1)
    else:
        coeff = st.fractions(min_value=-5, max_value=5, max_denominator=3)
    return st.lists(coeff, min_size=1, max_size=max_degree + 1).map(lambda cs: Poly(field, tuple(cs)))


nonzero_q = polys(QQ).filter(lambda f: not f.is_zero())
nonzero_f5 = polys(F5).filter(lambda f: not f.is_zero())


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([QQ, F5, F3]).flatmap(lambda K: st.tuples(polys(K), polys(K))))
def test_normalize_multiplicative(fg):
    f, g = fg
    if f.is_zero() or g.is_zero():
        return
    assert normalize(f * g) == normalize(normalize(f) * normalize(g))
    a = Poly.monomial(f.field, 3, 2)
    assert normalize(a * f) == normalize(f)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([QQ, F5]).flatmap(lambda K: st.tuples(polys(K), polys(K))))
def test_gcd_divides_and_lcm(fg):
    f, g = fg
    if f.is_zero() and g.is_zero():
        return
    d = gcd(f, g)
    assert d.divides(f) and d.divides(g)
    if not f.is_zero() and not g.is_zero():
        assert d * lcm(f, g) == (f * g).monic()


@settings(max_examples=100, deadline=None)
@given(st.one_of(nonzero_q, nonzero_f5, polys(F3).filter(lambda f: not f.is_zero())))
def test_factor_matches_sympy(f):
    f = f.monic()
    if f.degree < 1:
        return
    assert ours(f) == sym_factor(f)
    rebuilt = Poly(f.field, (1,))
    for p, m in factor(f):
        rebuilt = rebuilt * p ** m
    assert rebuilt == f


@settings(max_examples=100, deadline=None)
@given(st.one_of(nonzero_q, nonzero_f5, polys(F3).filter(lambda f: not f.is_zero())))
def test_squarefree_part_properties(f):
    f = f.monic()
    if f.degree < 1:
        return
    s = squarefree_part(f)
    assert is_squarefree(s)
    assert s.divides(f)
    assert f.divides(s ** f.degree)


@settings(max_examples=60, deadline=None)
@given(nonzero_f5, nonzero_f5)
def test_factor_multiplicative_on_coprime(f, g):
    f, g = f.monic(), g.monic()
    if f.degree < 1 or g.degree < 1 or not gcd(f, g).is_one():
        return
    assert ours(f * g) == sorted(ours(f) + ours(g))
