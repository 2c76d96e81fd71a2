"""Factorization of ideals into products of prime ideals and of semiprime
ideals.  Every factorization is returned as a certificate that has been
re-multiplied and compared with its target; a construction that does not
reproduce the target raises :class:`VerificationError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .classify import is_prime, is_semiprime
from .field_poly import DEFAULT_QDEG, Poly, factor
from .graph import (
    AdmissiblePair,
    _breaking,
    _quotient,
    admissible_pairs,
    condition_K,
    irredundant_tail_cover,
    quotient_pair,
)
from .ideal import (
    Ideal,
    IdealError,
    ideal_from_vertices,
    ideal_sum,
    intersect,
    make_ideal,
    product,
    product_all,
)

__all__ = [
    "FactorizationCert",
    "NonIntersectionWitness",
    "VerificationError",
    "intersection_to_product",
    "prime_factorization",
    "product_not_intersection_witness",
    "semiprime_factorization",
]


class VerificationError(RuntimeError):
    """A constructed factorization failed to multiply back to its target."""

    def __init__(self, message: str, target: Ideal | None = None, got: Ideal | None = None):
        if target is not None and got is not None:
            message = f"{message}: target {target}, product {got}"
        super().__init__(message)
        self.target = target
        self.got = got


@dataclass(frozen=True)
class FactorizationCert:
    target: Ideal
    factors: tuple[Ideal, ...]
    kind: str
    verified: bool

    @classmethod
    def build(cls, target: Ideal, factors, kind: str) -> "FactorizationCert":
        factors = tuple(factors)
        got = product_all(factors)
        if got != target:
            raise VerificationError(f"{kind} factors do not multiply back", target, got)
        return cls(target, factors, kind, True)

    def recheck(self) -> bool:
        """Multiply the factors again, in reverse order."""
        return reduce(product, reversed(self.factors)) == self.target

    def __len__(self) -> int:
        return len(self.factors)


def _require_proper(I: Ideal) -> None:
    if not I.is_proper:
        raise IdealError("factorization needs a proper ideal")


def prime_factorization(I: Ideal, degree_bound: int = DEFAULT_QDEG) -> FactorizationCert | None:
    """Write ``I`` as a product of primes, or return ``None`` when the
    quotient vertex set is not covered by maximal tails or carries more
    cycles than the cover has tails.

    Each tail of the chosen cover corresponds to a graded prime above
    ``gr(I)``; the tail holding a cycle ``c`` of ``I`` is replaced by the
    primes ``P + <p(c)>``, one per irreducible factor ``p`` of ``f_c``
    counted with multiplicity.
    """
    _require_proper(I)
    g, H, S = I.graph, I.H, I.S
    Q = _quotient(g, H, S)
    cover = irredundant_tail_cover(Q)
    if cover is None or len(I.parts) > cover.n:
        return None

    # the prime attached to a tail M of Q is I(Q^0 - M, B_{Q^0 - M}) in Q;
    # pull it back to the admissible pair of E with that image
    image = {quotient_pair(g, I.pair, p): p for p in admissible_pairs(g) if I.pair <= p}
    factors = []
    for M in cover.tails:
        HQ = Q.vertex_set - M
        pair = image.get(AdmissiblePair(HQ, _breaking(Q, HQ)))
        if pair is None:
            raise VerificationError(f"no admissible pair of the graph maps to the tail {sorted(M)}")
        P = Ideal(g, I.field, pair.H, pair.S)
        here = [(c, f) for c, f in I.parts if c.base in M]
        if not here:
            factors.append(P)
            continue
        (c, f), = here
        for p, m in factor(f, degree_bound):
            factors.extend([make_ideal(g, P.H, P.S, [(c, p)], I.field)] * m)
    for P in factors:
        if not is_prime(P, degree_bound):
            raise VerificationError(f"factor {P} is not prime")
    return FactorizationCert.build(I, factors, "prime")


def semiprime_factorization(I: Ideal, degree_bound: int = DEFAULT_QDEG) -> FactorizationCert:
    """Write ``I`` as a product of ``n`` semiprime ideals, ``n`` the largest
    multiplicity of an irreducible factor of any cycle polynomial.

    Each round peels off one factor: on the cycles where some irreducible
    reaches the current maximum, it takes the product of those irreducibles;
    the other cycles are swallowed whole into the graded part.  The
    cofactors carry over to the next round.
    """
    _require_proper(I)
    g, K = I.graph, I.field
    exps = {c: dict(factor(f, degree_bound)) for c, f in I.parts}
    n = max((m for fs in exps.values() for m in fs.values()), default=1)
    out = []
    while n > 1:
        top, others = [], []
        for c, fs in exps.items():
            peak = [p for p, m in fs.items() if m == n]
            if peak:
                top.append((c, reduce(lambda a, b: a * b, peak)))
                for p in peak:
                    fs[p] -= 1
            else:
                others.append(c)
        J = make_ideal(g, I.H, I.S, top, K)
        swallowed = frozenset().union(*(c.vertex_set for c in others))
        if swallowed:
            J = ideal_sum(J, ideal_from_vertices(g, swallowed, K))
        out.append(J)
        n -= 1
    rest = []
    for c, fs in exps.items():
        f = Poly.const(K, 1)
        for p, m in fs.items():
            f = f * p ** m
        rest.append((c, f))
    out.append(make_ideal(g, I.H, I.S, rest, K))
    for J in out:
        if not is_semiprime(J):
            raise VerificationError(f"factor {J} is not semiprime")
    return FactorizationCert.build(I, out, "semiprime")


def intersection_to_product(primes) -> FactorizationCert:
    """Product-of-primes certificate for the intersection of ``primes``."""
    primes = list(primes)
    if not primes:
        raise IdealError("need at least one prime")
    for P in primes:
        if not P.is_proper or not is_prime(P):
            raise IdealError(f"{P} is not a prime ideal")
    I = reduce(intersect, primes)
    gr = reduce(intersect, [P.gr() for P in primes])
    if I.gr() != gr:
        raise VerificationError("graded part of the intersection is not the meet of graded parts", gr, I.gr())
    cert = prime_factorization(I)
    if cert is None:
        raise VerificationError(f"intersection {I} has no prime factorization")
    return cert


@dataclass(frozen=True)
class NonIntersectionWitness:
    prime: Ideal
    square: Ideal


def product_not_intersection_witness(g, field=None) -> NonIntersectionWitness | None:
    """A non-graded prime ``P`` whose square is not semiprime, so ``P*P`` is
    not an intersection of primes.  ``None`` under Condition (K)."""
    from .field_poly import QQ

    K = field or QQ
    k = condition_K(g)
    if k:
        return None
    c = k.witness
    H = frozenset(w for w in g.vertex_set if not g.geq(w, c.base))
    P = make_ideal(g, H, _breaking(g, H), [(c, Poly(K, (-1, 1)))], K)
    if not is_prime(P):
        raise VerificationError(f"{P} should be prime")
    P2 = product(P, P)
    if P2 == P or is_semiprime(P2):
        raise VerificationError(f"{P2} should not be semiprime")
    return NonIntersectionWitness(P, P2)
