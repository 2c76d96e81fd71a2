"""Two-sided ideals of a Leavitt path algebra in normal form, and their
arithmetic.

An ideal is stored as ``I(H, S) + sum <f_c(c)>``: an admissible pair for
the graded part plus a map from cycles to canonical polynomials.  Each
cycle is exit-free in the quotient graph ``E \\ (H, S)`` and each
polynomial is monic with nonzero constant term and positive degree.  The
presentation is unique, so ``==`` on :class:`Ideal` is ideal equality.

Every operation works cycle by cycle through a *local ideal*: for a cycle
``c`` that is exit-free over the relevant graded part, the ideal meets the
matrix ring over ``<c^0>`` in ``M(J)`` for a principal ideal ``J`` of
``K[x, x^-1]``.  ``J`` is the unit ideal when ``c^0`` lies in ``H``, the
ideal of ``f_c`` when ``c`` carries a polynomial, and zero otherwise.
Products multiply local ideals, intersections take lcms, sums take gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

from .field_poly import QQ, Field, Poly, gcd, lcm, normalize, squarefree_part
from .graph import (
    AdmissiblePair,
    Cycle,
    Graph,
    GraphError,
    _breaking,
    _quotient,
    check_admissible,
    cycles_without_exits,
    hereditary_saturated_closure,
)

__all__ = [
    "Ideal",
    "IdealError",
    "contains",
    "graded_ideal",
    "ideal_from_vertices",
    "ideal_sum",
    "intersect",
    "make_ideal",
    "power",
    "product",
    "product_all",
    "radical",
    "whole_ideal",
    "zero_ideal",
]


class IdealError(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    graph: Graph
    field: Field
    H: frozenset[str]
    S: frozenset[str]
    parts: tuple[tuple[Cycle, Poly], ...] = ()

    @property
    def pair(self) -> AdmissiblePair:
        return AdmissiblePair(self.H, self.S)

    @property
    def is_proper(self) -> bool:
        return self.H != self.graph.vertex_set

    @property
    def is_graded(self) -> bool:
        return not self.parts

    @property
    def cyc(self) -> Mapping[Cycle, Poly]:
        return dict(self.parts)

    def cyc_set(self) -> frozenset[Cycle]:
        return frozenset(c for c, _ in self.parts)

    def gr(self) -> "Ideal":
        """Graded part ``I(H, S)``."""
        if not self.parts:
            return self
        return Ideal(self.graph, self.field, self.H, self.S)

    def local(self, c: Cycle) -> Poly | None:
        """Local ideal at ``c`` as a canonical generator: 1 for the unit
        ideal, ``None`` for zero."""
        if c.vertex_set <= self.H:
            return Poly.const(self.field, 1)
        return self.cyc.get(c)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def __and__(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def __le__(self, other: "Ideal") -> bool:
        return contains(other, self)

    def __pow__(self, n: int) -> "Ideal":
        return power(self, n)

    def __str__(self) -> str:
        if not self.is_proper:
            return "L"
        if not self.H and not self.parts:
            return "0"
        pieces = []
        if self.H:
            pieces.append("I({" + ",".join(sorted(self.H)) + "}, {" + ",".join(sorted(self.S)) + "})")
        for c, f in self.parts:
            pieces.append(f"<({f})[{c}]>")
        return " + ".join(pieces)


# ---------------------------------------------------------------------------
# construction


def _check_pair(a: Ideal, b: Ideal) -> None:
    if a.field != b.field:
        raise IdealError(f"field mismatch: {a.field} vs {b.field}")
    if a.graph is not b.graph and a.graph != b.graph:
        raise IdealError("ideals live over different graphs")


@lru_cache(maxsize=4096)
def _exit_free(g: Graph, H: frozenset[str], S: frozenset[str]) -> frozenset[Cycle]:
    if H == g.vertex_set:
        return frozenset()
    return frozenset(cycles_without_exits(_quotient(g, H, S)))


def _saturate(g: Graph, X: Iterable[str], T: Iterable[str]) -> tuple[frozenset[str], frozenset[str]]:
    """Admissible pair of the graded ideal generated by the vertices ``X``
    and the elements ``v^{H_v}`` for ``v`` in ``T``.

    A ``v`` in ``T`` that no longer sends any edge outside the current H is
    itself in the ideal and joins H; the rest stay as breaking vertices.
    """
    H = hereditary_saturated_closure(g, X)
    T = frozenset(T)
    while True:
        absorbed = {v for v in T - H
                    if not any(b.dst not in H for b in g.out_bundles[v])}
        if not absorbed:
            break
        H = hereditary_saturated_closure(g, H | absorbed)
    return H, (T - H) & _breaking(g, H)


def _assemble(g: Graph, K: Field, X: Iterable[str], T: Iterable[str],
              parts: Iterable[tuple[Cycle, Poly]]) -> Ideal:
    """Normal form of the ideal generated by a graded part and cycle
    polynomials, each cycle assumed exit-free over that graded part.

    Duplicate cycles combine by gcd; a unit gcd pulls the cycle's vertices
    into H, which is repeated until nothing changes.
    """
    X = frozenset(X)
    parts = [(c, normalize(f)) for c, f in parts]
    while True:
        H, S = _saturate(g, X, T)
        merged: dict[Cycle, Poly] = {}
        for c, f in parts:
            if c.vertex_set & H:
                continue
            merged[c] = gcd(merged[c], f) if c in merged else f
        units = [c for c, f in merged.items() if f.degree == 0]
        if not units:
            break
        X = H.union(*(c.vertex_set for c in units))
    if H == g.vertex_set:
        return Ideal(g, K, H, frozenset())
    free = _exit_free(g, H, S)
    for c in merged:
        if c not in free:
            raise IdealError(f"cycle {c} has an exit in the quotient by {AdmissiblePair(H, S)}")
    return Ideal(g, K, H, S, tuple(sorted(merged.items(), key=lambda t: t[0].sort_key())))


def make_ideal(g: Graph, H: Iterable[str] = (), S: Iterable[str] = (),
               parts: Sequence[tuple[Cycle, Poly]] = (), field: Field | None = None) -> Ideal:
    """Normal form of ``I(H, S) + sum <f(c)>``.

    ``(H, S)`` must be admissible and every cycle must avoid H and be
    exit-free in ``E \\ (H, S)``.  Constant polynomials absorb their cycle.
    """
    try:
        pair = check_admissible(g, H, S)
    except GraphError as exc:
        raise IdealError(str(exc)) from exc
    K = field or (parts[0][1].field if parts else QQ)
    free = _exit_free(g, pair.H, pair.S)
    checked = []
    for c, f in parts:
        if f.field != K:
            raise IdealError(f"polynomial {f} is not over {K}")
        if f.is_zero():
            continue
        if c.vertex_set & pair.H:
            raise IdealError(f"cycle {c} meets H")
        if c not in free:
            raise IdealError(f"cycle {c} has an exit in the quotient by {pair}")
        checked.append((c, f))
    return _assemble(g, K, pair.H, pair.S, checked)


def graded_ideal(g: Graph, H: Iterable[str] = (), S: Iterable[str] = (), field: Field = QQ) -> Ideal:
    return make_ideal(g, H, S, (), field)


def zero_ideal(g: Graph, field: Field = QQ) -> Ideal:
    return Ideal(g, field, frozenset(), frozenset())


def whole_ideal(g: Graph, field: Field = QQ) -> Ideal:
    return Ideal(g, field, g.vertex_set, frozenset())


def ideal_from_vertices(g: Graph, X: Iterable[str], field: Field = QQ) -> Ideal:
    """The ideal generated by a set of vertices."""
    H, S = _saturate(g, X, ())
    return Ideal(g, field, H, S)


# ---------------------------------------------------------------------------
# arithmetic


def _meet_pair(a: Ideal, b: Ideal) -> tuple[frozenset[str], frozenset[str]]:
    """Admissible pair of ``gr(a) & gr(b)``.

    For ``v`` in ``B_H`` with ``H`` below ``H'``, ``v^H`` lies in ``I(H', S')``
    exactly when ``v`` is in ``H'`` or in ``S'``: the difference
    ``v^H - v^H'`` is a finite sum of ``ee*`` with ``r(e)`` in ``H'``.
    """
    H = a.H & b.H
    B = _breaking(a.graph, H)
    S = frozenset(v for v in B if (v in a.H or v in a.S) and (v in b.H or v in b.S))
    return H, S


def _local_combine(a: Ideal, b: Ideal, op) -> Ideal:
    H, S = _meet_pair(a, b)
    parts = []
    for c in a.cyc_set() | b.cyc_set():
        fa, fb = a.local(c), b.local(c)
        if fa is None or fb is None:
            continue
        parts.append((c, op(fa, fb)))
    return _assemble(a.graph, a.field, H, S, parts)


def product(a: Ideal, b: Ideal) -> Ideal:
    """``a * b``.  Its graded part is ``gr(a) & gr(b)``; local ideals multiply."""
    _check_pair(a, b)
    return _local_combine(a, b, lambda f, g: f * g)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """``a & b``.  Graded parts meet; local ideals intersect (lcm)."""
    _check_pair(a, b)
    return _local_combine(a, b, lcm)


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    """``a + b``.  Graded parts join; shared cycles take the gcd."""
    _check_pair(a, b)
    return _assemble(a.graph, a.field, a.H | b.H, a.S | b.S, a.parts + b.parts)


def contains(big: Ideal, small: Ideal) -> bool:
    """True when ``small`` is a subset of ``big``."""
    _check_pair(big, small)
    if not (small.pair <= big.pair):
        return False
    for d, g in small.parts:
        if d.vertex_set <= big.H:
            continue
        f = big.cyc.get(d)
        if f is None or not f.divides(g):
            return False
    return True


def radical(a: Ideal) -> Ideal:
    """Replace each cycle polynomial by its square-free part."""
    if not a.is_proper:
        raise IdealError("the radical is only defined for proper ideals")
    if a.is_graded:
        return a
    parts = tuple((c, squarefree_part(f)) for c, f in a.parts)
    return Ideal(a.graph, a.field, a.H, a.S, parts)


def product_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise IdealError("empty product")
    return reduce(product, ideals)


def power(a: Ideal, n: int) -> Ideal:
    if n < 1:
        raise IdealError("ideal powers need n >= 1")
    return product_all([a] * n)
