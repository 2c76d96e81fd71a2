"""Predicates on single ideals (prime, semiprime, prime power) and on whole
algebras (every proper ideal prime / semiprime / a product of primes / a
product of semiprimes).  Each predicate returns a small report object that
is truthy exactly when the property holds and carries the witness data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .field_poly import DEFAULT_QDEG, Poly, factor, is_irreducible, is_squarefree
from .graph import (
    DEFAULT_MAX_CYCLES,
    AdmissiblePair,
    Cycle,
    Graph,
    _breaking,
    _quotient,
    admissible_pairs,
    condition_K,
    cycles_without_K,
    cycles_without_exits,
    hereditary_saturated_sets,
    incomparable_pair,
    irredundant_tail_cover,
    is_downward_directed,
    simple_cycles,
)
from .ideal import Ideal, IdealError, make_ideal

__all__ = [
    "GlobalReport",
    "PrimaryReport",
    "PrimeReport",
    "every_ideal_prime",
    "every_ideal_product_of_primes",
    "every_ideal_product_of_semiprimes",
    "every_ideal_semiprime",
    "graded_primes_above",
    "is_prime",
    "is_semiprime",
    "primary_report",
]


def _require_proper(I: Ideal) -> None:
    if not I.is_proper:
        raise IdealError("predicate needs a proper ideal")


@dataclass(frozen=True)
class PrimeReport:
    """``case`` is 1 (graded, S = B_H), 2 (graded, one breaking vertex
    missing from S) or 3 (one cycle with an irreducible polynomial)."""

    holds: bool
    case: int | None = None
    breaking_vertex: str | None = None
    cycle: Cycle | None = None
    poly: Poly | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_prime(I: Ideal, degree_bound: int = DEFAULT_QDEG) -> PrimeReport:
    _require_proper(I)
    g = I.graph
    B = _breaking(g, I.H)
    rest = g.vertex_set - I.H
    if I.is_graded:
        if I.S == B and is_downward_directed(g, rest):
            return PrimeReport(True, 1)
        missing = B - I.S
        if len(missing) == 1:
            (u,) = missing
            if rest == g.tree_above(u):
                return PrimeReport(True, 2, breaking_vertex=u)
        return PrimeReport(False)
    if len(I.parts) != 1 or I.S != B:
        return PrimeReport(False)
    (c, f), = I.parts
    if (c in cycles_without_K(g) and rest == g.tree_above(c.base)
            and is_irreducible(f, degree_bound)):
        return PrimeReport(True, 3, cycle=c, poly=f)
    return PrimeReport(False)


def is_semiprime(I: Ideal) -> bool:
    """Every cycle polynomial square-free."""
    _require_proper(I)
    return all(is_squarefree(f) for _, f in I.parts)


@dataclass(frozen=True)
class PrimaryReport:
    """Primary, quasi-primary, irreducible and prime power coincide; the
    witness is ``(prime, n)`` with ``I = prime ** n``."""

    holds: bool
    prime: Ideal | None = None
    n: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def primary_report(I: Ideal, degree_bound: int = DEFAULT_QDEG) -> PrimaryReport:
    _require_proper(I)
    if I.is_graded:
        if is_prime(I, degree_bound):
            return PrimaryReport(True, I, 1)
        return PrimaryReport(False)
    g = I.graph
    if len(I.parts) != 1 or I.S != _breaking(g, I.H):
        return PrimaryReport(False)
    if not is_downward_directed(g, g.vertex_set - I.H):
        return PrimaryReport(False)
    (c, f), = I.parts
    facs = factor(f, degree_bound)
    if len(facs) != 1:
        return PrimaryReport(False)
    p, n = facs[0]
    return PrimaryReport(True, make_ideal(g, I.H, I.S, [(c, p)], I.field), n)


def graded_primes_above(g: Graph, pair: AdmissiblePair, field=None) -> list[Ideal]:
    """Graded prime ideals containing ``I(pair)``."""
    from .field_poly import QQ

    out = []
    for q in admissible_pairs(g):
        if q.H == g.vertex_set or not (pair <= q):
            continue
        P = Ideal(g, field or QQ, q.H, q.S)
        if is_prime(P):
            out.append(P)
    return out


# ---------------------------------------------------------------------------
# whole-algebra predicates


@dataclass(frozen=True)
class GlobalReport:
    holds: bool
    cycle: Cycle | None = None
    pairs: tuple[AdmissiblePair, AdmissiblePair] | None = None
    details: Any = None

    def __bool__(self) -> bool:
        return self.holds


def every_ideal_semiprime(g: Graph) -> GlobalReport:
    """Holds iff Condition (K); the witness is a cycle without (K)."""
    k = condition_K(g)
    return GlobalReport(k.holds, cycle=k.witness)


def every_ideal_prime(g: Graph) -> GlobalReport:
    """Condition (K) plus the admissible pairs forming a chain."""
    k = condition_K(g)
    if not k:
        return GlobalReport(False, cycle=k.witness)
    bad = incomparable_pair(admissible_pairs(g))
    if bad is not None:
        return GlobalReport(False, pairs=bad)
    return GlobalReport(True)


@dataclass(frozen=True)
class PairCover:
    pair: AdmissiblePair
    cover_sizes: tuple[int, ...]
    n: int
    exit_free_cycles: int
    ok: bool
    tails: tuple[frozenset[str], ...] = field(default=())


def every_ideal_product_of_primes(g: Graph) -> GlobalReport:
    """For every admissible pair with H != E^0, the quotient vertex set must
    be an irredundant union of n > 0 maximal tails with at most n exit-free
    cycles.  ``n`` is the largest size of an irredundant cover; every size
    found is kept in the per-pair details."""
    details = []
    failing = None
    for pair in admissible_pairs(g):
        if pair.H == g.vertex_set:
            continue
        Q = _quotient(g, pair.H, pair.S)
        cover = irredundant_tail_cover(Q)
        k = len(cycles_without_exits(Q))
        if cover is None:
            row = PairCover(pair, (), 0, k, False)
        else:
            row = PairCover(pair, cover.sizes, cover.n, k, k <= cover.n, cover.tails)
        details.append(row)
        if not row.ok and failing is None:
            failing = pair
    return GlobalReport(failing is None, pairs=(failing, failing) if failing else None,
                        details=tuple(details))


def every_ideal_product_of_semiprimes(g: Graph, max_cycles: int = DEFAULT_MAX_CYCLES) -> GlobalReport:
    """Always true on a finite vertex set.  The details map each hereditary
    saturated H to the cycles avoiding H whose exits all land in H."""
    cycles = [verts for verts, count in simple_cycles(g, max_cycles) if count == 1]
    report = {}
    for H in hereditary_saturated_sets(g):
        hits = []
        for verts in cycles:
            vs = set(verts)
            if vs & H:
                continue
            exits_ok = True
            for i, v in enumerate(verts):
                nxt = verts[(i + 1) % len(verts)]
                for b in g.out_bundles[v]:
                    if b.dst == nxt:
                        continue
                    if b.dst not in H:
                        exits_ok = False
            if exits_ok:
                hits.append(Cycle.from_vertices(g, verts))
        report[H] = tuple(hits)
    return GlobalReport(True, details=report)
