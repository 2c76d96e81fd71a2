import random
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from corpus import NAMED, column, double_loops, four_points, one_loop, random_ideal, two_points
from lpa_ideals.classify import is_prime, is_semiprime, primary_report
from lpa_ideals.factor import (
    FactorizationCert,
    VerificationError,
    intersection_to_product,
    prime_factorization,
    product_not_intersection_witness,
    semiprime_factorization,
)
from lpa_ideals.field_poly import QQ, Field, factor, parse_poly
from lpa_ideals.graph import Cycle
from lpa_ideals.ideal import (
    IdealError,
    graded_ideal,
    ideal_from_vertices,
    intersect,
    make_ideal,
    product,
    whole_ideal,
    zero_ideal,
)

G1 = one_loop()
LOOP = Cycle.from_vertices(G1, ["v"])


def loop_ideal(text):
    return make_ideal(G1, parts=[(LOOP, parse_poly(text))])


def co_vertex(g, v):
    return graded_ideal(g, g.vertex_set - {v})


# -- prime factorization

def test_prime_factorization_loop():
    cert = prime_factorization(loop_ideal("(x-1)^2(x-2)"))
    assert cert.verified and cert.kind == "prime"
    assert sorted(str(f) for f in cert.factors) == sorted(
        str(loop_ideal(t)) for t in ["x-1", "x-1", "x-2"])


def test_prime_factorization_points():
    g = two_points()
    cert = prime_factorization(zero_ideal(g))
    assert set(cert.factors) == {co_vertex(g, "a"), co_vertex(g, "b")}
    g5 = four_points()
    cert5 = prime_factorization(zero_ideal(g5))
    assert set(cert5.factors) == {co_vertex(g5, v) for v in "uvwx"}
    assert cert5.recheck()


def test_prime_factorization_of_prime_is_itself():
    P = loop_ideal("x^2+1")
    assert prime_factorization(P).factors == (P,)
    Q = co_vertex(two_points(), "a")
    assert prime_factorization(Q).factors == (Q,)


def test_prime_factorization_column():
    g = column(2)
    c1, c2 = Cycle.from_vertices(g, ["w1"]), Cycle.from_vertices(g, ["w2"])
    I = make_ideal(g, {"v1", "v2"}, (), [(c1, parse_poly("1+x")), (c2, parse_poly("(1+x)^2"))])
    cert = prime_factorization(I)
    assert len(cert) == 3 and all(is_prime(P) for P in cert.factors)


def test_prime_factorization_agrees_with_primary_report():
    I = loop_ideal("(x^2+x+1)^3")
    r = primary_report(I)
    assert prime_factorization(I).factors == (r.prime,) * r.n


def test_prime_factorization_rejects_improper():
    with pytest.raises(IdealError):
        prime_factorization(whole_ideal(G1))


# -- semiprime factorization

def test_semiprime_factorization_examples():
    cert = semiprime_factorization(loop_ideal("(x-1)^3"))
    assert cert.factors == (loop_ideal("x-1"),) * 3
    g = column(2)
    c1, c2 = Cycle.from_vertices(g, ["w1"]), Cycle.from_vertices(g, ["w2"])
    I = make_ideal(g, {"v1", "v2"}, (), [(c1, parse_poly("1+x")), (c2, parse_poly("(1+x)^2"))])
    cert = semiprime_factorization(I)
    J1 = make_ideal(g, {"v1", "v2", "w1"}, (), [(c2, parse_poly("1+x"))])
    J2 = make_ideal(g, {"v1", "v2"}, (), [(c1, parse_poly("1+x")), (c2, parse_poly("1+x"))])
    assert cert.factors == (J1, J2)
    S = loop_ideal("(x-1)(x-2)")
    assert semiprime_factorization(S).factors == (S,)


def test_two_distinct_certificates_for_zero_on_four_points():
    g = four_points()
    uv = FactorizationCert.build(zero_ideal(g), [ideal_from_vertices(g, "u"), ideal_from_vertices(g, "v")], "semiprime")
    wx = FactorizationCert.build(zero_ideal(g), [ideal_from_vertices(g, "w"), ideal_from_vertices(g, "x")], "semiprime")
    assert uv.verified and wx.verified and uv.factors != wx.factors
    assert all(is_semiprime(f) for f in uv.factors + wx.factors)


def test_bad_certificate_is_rejected():
    with pytest.raises(VerificationError):
        FactorizationCert.build(loop_ideal("(x-1)^2"), [loop_ideal("x-1")], "prime")


# -- intersections

def test_intersection_to_product_examples():
    g = two_points()
    cert = intersection_to_product([co_vertex(g, "a"), co_vertex(g, "b")])
    assert cert.target == zero_ideal(g)
    P = loop_ideal("x-3")
    assert intersection_to_product([P]).factors == (P,)
    cert = intersection_to_product([loop_ideal("x-1"), loop_ideal("x-2")])
    assert cert.target == loop_ideal("(x-1)(x-2)")
    assert sorted(map(str, cert.factors)) == sorted([str(loop_ideal("x-1")), str(loop_ideal("x-2"))])
    with pytest.raises(IdealError):
        intersection_to_product([loop_ideal("(x-1)^2")])


def test_product_not_intersection_witness():
    w = product_not_intersection_witness(G1)
    assert w.prime == loop_ideal("x-1") and w.square == loop_ideal("(x-1)^2")
    assert not is_semiprime(w.square)
    assert product_not_intersection_witness(double_loops()) is None
    assert product_not_intersection_witness(two_points()) is None
    w6 = product_not_intersection_witness(column(3))
    assert is_prime(w6.prime) and not is_semiprime(w6.square)


# -- properties

GRAPHS = {name: make() for name, make in NAMED.items()}


@st.composite
def ideals(draw):
    g = GRAPHS[draw(st.sampled_from(sorted(GRAPHS)))]
    K = draw(st.sampled_from([QQ, Field.fp(5)]))
    return random_ideal(g, random.Random(draw(st.integers(0, 10**9))), K, max_degree=4)


@settings(max_examples=200, deadline=None)
@given(ideals())
def test_factorizations_round_trip(I):
    if not I.is_proper:
        return
    for cert in (prime_factorization(I), semiprime_factorization(I)):
        assert cert is not None  # finite graphs always factor
        shuffled = list(cert.factors)
        random.Random(len(shuffled)).shuffle(shuffled)
        assert reduce(product, shuffled) == I
    pc = prime_factorization(I)
    assert all(is_prime(P) for P in pc.factors)
    sc = semiprime_factorization(I)
    assert all(is_semiprime(J) for J in sc.factors)
    n = max((m for _, f in I.parts for _, m in factor(f)), default=1)
    assert len(sc) == n


@settings(max_examples=100, deadline=None)
@given(ideals(), st.integers(0, 10**6))
def test_intersections_of_primes_factor(I, seed):
    if not I.is_proper:
        return
    primes = prime_factorization(I).factors
    rng = random.Random(seed)
    pick = rng.sample(primes, rng.randint(1, len(primes)))
    cert = intersection_to_product(pick)
    assert cert.target == reduce(intersect, pick)
