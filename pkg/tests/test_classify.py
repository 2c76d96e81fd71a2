import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import (
    NAMED,
    all_graphs,
    chained_loops,
    column,
    double_loops,
    omega_fork,
    one_loop,
    random_ideal,
    single_vertex,
    two_points,
)
from lpa_ideals.classify import (
    every_ideal_prime,
    every_ideal_product_of_primes,
    every_ideal_product_of_semiprimes,
    every_ideal_semiprime,
    graded_primes_above,
    is_prime,
    is_semiprime,
    primary_report,
)
from lpa_ideals.field_poly import QQ, Field, factor, parse_poly
from lpa_ideals.graph import OMEGA, AdmissiblePair, Cycle, Graph, admissible_pairs
from lpa_ideals.ideal import (
    IdealError,
    contains,
    graded_ideal,
    intersect,
    make_ideal,
    power,
    product,
    product_all,
    whole_ideal,
    zero_ideal,
)

G1 = one_loop()
LOOP = Cycle.from_vertices(G1, ["v"])


def loop_ideal(text):
    return make_ideal(G1, parts=[(LOOP, parse_poly(text))])


# -- single ideals

def test_is_prime_examples():
    r = is_prime(loop_ideal("x-1"))
    assert r and r.case == 3 and r.cycle == LOOP and r.poly == parse_poly("x-1")
    assert not is_prime(loop_ideal("(x-1)^2"))
    assert not is_prime(zero_ideal(two_points()))
    assert is_prime(zero_ideal(G1)).case == 1
    with pytest.raises(IdealError):
        is_prime(whole_ideal(G1))


def test_is_prime_breaking_vertex_case():
    # u carries a loop and emits infinitely many edges to v
    g = Graph.build(["u", "v"], [("u", "u", 1, "l"), ("u", "v", OMEGA, "b")])
    r = is_prime(make_ideal(g, {"v"}))
    assert r and r.case == 2 and r.breaking_vertex == "u"
    assert is_prime(make_ideal(g, {"v"}, {"u"})).case == 1
    # in the fork the quotient by ({v}, {}) has u and a primed sink u' with
    # no common successor, so that pair is not prime
    f = omega_fork()
    assert not is_prime(make_ideal(f, {"v"}))
    assert is_prime(make_ideal(f, {"v"}, {"u"})).case == 1
    assert not is_prime(zero_ideal(f))


def test_is_semiprime_examples():
    assert is_semiprime(graded_ideal(double_loops(), {"v"}))
    assert not is_semiprime(loop_ideal("(x-1)^2"))
    assert is_semiprime(loop_ideal("(x-1)(x-2)"))
    with pytest.raises(IdealError):
        is_semiprime(whole_ideal(G1))


def test_primary_report_examples():
    r = primary_report(loop_ideal("(x-1)^2"))
    assert r and r.prime == loop_ideal("x-1") and r.n == 2
    assert not primary_report(zero_ideal(two_points()))
    assert not primary_report(loop_ideal("(x-1)(x-2)"))
    assert not is_prime(loop_ideal("(x-1)(x-2)"))
    assert primary_report(zero_ideal(G1)).n == 1


def test_primary_over_f5():
    F5 = Field.fp(5)
    I = make_ideal(G1, parts=[(LOOP, parse_poly("(x^2+2)^3 mod 5"))], field=F5)
    r = primary_report(I)
    assert r and r.n == 3 and power(r.prime, 3) == I
    # x^2+1 splits mod 5, so its cube is not a prime power
    J = make_ideal(G1, parts=[(LOOP, parse_poly("(x^2+1)^3 mod 5"))], field=F5)
    assert not primary_report(J)


def test_graded_primes_above():
    primes = graded_primes_above(two_points(), AdmissiblePair(frozenset()))
    assert sorted(sorted(P.H) for P in primes) == [["a"], ["b"]]


# -- whole-algebra predicates

def test_every_ideal_prime_examples():
    assert every_ideal_prime(single_vertex())
    r = every_ideal_prime(double_loops())
    assert not r and {frozenset(p.H) for p in r.pairs} == {frozenset("uv"), frozenset("vw")}
    r1 = every_ideal_prime(G1)
    assert not r1 and r1.cycle == LOOP


def test_every_ideal_semiprime_examples():
    assert every_ideal_semiprime(double_loops())
    assert not every_ideal_semiprime(chained_loops())
    assert every_ideal_semiprime(two_points())


def test_every_ideal_product_of_primes_examples():
    assert every_ideal_product_of_primes(G1)
    r2 = every_ideal_product_of_primes(two_points())
    assert r2 and len(r2.details) == 3
    r6 = every_ideal_product_of_primes(column(2))
    assert r6
    row = next(d for d in r6.details if not d.pair.H)
    # hand enumeration: the maximal tails of the column graph are the
    # complements of {v1,v2,w2} and {v1,v2,w1} together with M(v2) = E^0;
    # only the latter covers, and no cycle is exit-free
    assert row.n == 1 and row.exit_free_cycles == 0 and row.tails == (frozenset({"v1", "v2", "w1", "w2"}),)
    row = next(d for d in r6.details if d.pair.H == {"v1", "v2"})
    assert row.n == 2 and row.exit_free_cycles == 2 and row.cover_sizes == (2,)


def test_every_ideal_product_of_semiprimes_examples():
    r4 = every_ideal_product_of_semiprimes(chained_loops())
    assert r4 and [c.vertices for c in r4.details[frozenset("b")]] == [("a",)]
    r1 = every_ideal_product_of_semiprimes(G1)
    assert r1 and [c.vertices for c in r1.details[frozenset()]] == [("v",)]
    for g in all_graphs().values():
        assert every_ideal_product_of_semiprimes(g)


def test_global_implications_on_corpus():
    for name, g in all_graphs().items():
        p = bool(every_ideal_prime(g))
        s = bool(every_ideal_semiprime(g))
        pp = bool(every_ideal_product_of_primes(g))
        ps = bool(every_ideal_product_of_semiprimes(g))
        assert (not p or s) and (not p or pp) and (not s or ps) and (not pp or ps), name


# -- properties

GRAPHS = {name: make() for name, make in NAMED.items()}


@st.composite
def ideals(draw):
    g = GRAPHS[draw(st.sampled_from(sorted(GRAPHS)))]
    K = draw(st.sampled_from([QQ, Field.fp(5)]))
    return random_ideal(g, random.Random(draw(st.integers(0, 10**9))), K)


@settings(max_examples=200, deadline=None)
@given(ideals())
def test_prime_implies_weaker_properties(I):
    if not I.is_proper:
        return
    if is_prime(I):
        assert primary_report(I) and is_semiprime(I)
    r = primary_report(I)
    if r:
        assert power(r.prime, r.n) == I and is_prime(r.prime)


@settings(max_examples=200, deadline=None)
@given(ideals())
def test_prime_by_definition_on_generated_pairs(P):
    """If P is reported prime then A*B inside P forces A or B inside P for
    sampled A, B; if P is not prime a failing pair usually shows up."""
    if not P.is_proper or not is_prime(P):
        return
    rng = random.Random(repr(P))
    for _ in range(20):
        A, B = random_ideal(P.graph, rng, P.field), random_ideal(P.graph, rng, P.field)
        if contains(P, product(A, B)):
            assert contains(P, A) or contains(P, B)


def test_non_prime_has_witness_pair():
    """Non-prime ideals on small graphs admit A, B among the enumerated
    ideals with AB inside I and neither inside I."""
    rng = random.Random(3)
    for name in ["two_points", "one_loop", "four_points", "omega_fork", "column2"]:
        g = GRAPHS[name]
        pool = [random_ideal(g, rng) for _ in range(60)] + [graded_ideal(g, p.H, p.S) for p in admissible_pairs(g)]
        for I in list(pool):
            for c, f in I.parts:
                for q, _ in factor(f):
                    pool.append(make_ideal(g, I.H, I.S, [(c, q)]))
                    pool.append(make_ideal(g, I.H, I.S, [(c, f // q)]))
        for I in pool:
            if not I.is_proper or is_prime(I):
                continue
            assert any(contains(I, product(A, B)) and not contains(I, A) and not contains(I, B)
                       for A in pool for B in pool), (name, str(I))


@pytest.mark.parametrize("name", [n for n in sorted(GRAPHS) if every_ideal_semiprime(GRAPHS[n])])
def test_condition_K_graphs(name):
    g = GRAPHS[name]
    rng = random.Random(name)
    for _ in range(100):
        I = random_ideal(g, rng)
        if I.is_proper:
            assert is_semiprime(I)
    primes = [graded_ideal(g, p.H, p.S) for p in admissible_pairs(g) if p.H != g.vertex_set]
    primes = [P for P in primes if is_prime(P)]
    for _ in range(30):
        trio = [rng.choice(primes) for _ in range(3)]
        assert product_all(trio) == intersect(intersect(trio[0], trio[1]), trio[2])
