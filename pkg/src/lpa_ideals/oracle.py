"""Independent models for differential testing of the ideal arithmetic.

* Acyclic graphs without infinite emitters: the algebra is a direct sum of
  full matrix algebras, one block per sink, of size the number of paths
  ending there.  Two-sided ideals are sets of blocks.
* A graph that is a single exit-free cycle: the algebra is a matrix algebra
  over ``K[x, x^-1]`` and ideals are principal, generated by a polynomial
  with the powers of ``x`` stripped.  Arithmetic here runs on sympy, not on
  this package's polynomial code.
* Any graph: the meet and join of graded ideals must be the infimum and
  supremum in the poset of admissible pairs, found by brute force.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import sympy

from .field_poly import QQ, Field, Poly
from .graph import AdmissiblePair, Cycle, Graph, admissible_pairs
from .ideal import (
    Ideal,
    contains,
    graded_ideal,
    ideal_from_vertices,
    ideal_sum,
    intersect,
    make_ideal,
    product,
    radical,
    zero_ideal,
)

__all__ = [
    "AcyclicModel",
    "CrossCheckReport",
    "OracleError",
    "acyclic_model",
    "cross_check",
    "laurent_model",
    "oracle_kind",
    "pair_lattice_check",
    "single_cycle",
]

MAX_ACYCLIC_VERTICES = 6
_X = sympy.Symbol("x")


class OracleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# acyclic graphs


@dataclass(frozen=True)
class AcyclicModel:
    """``L ~ sum over sinks s of M_{n_s}(K)``; an ideal is a set of sinks."""

    graph: Graph
    paths: dict[str, tuple[tuple[str, ...], ...]]
    starts: dict[str, frozenset[str]] = field(repr=False)

    @property
    def sinks(self) -> tuple[str, ...]:
        return tuple(sorted(self.paths))

    @property
    def block_sizes(self) -> dict[str, int]:
        return {s: len(ps) for s, ps in self.paths.items()}

    @property
    def dimension(self) -> int:
        return sum(n * n for n in self.block_sizes.values())

    def ideal_of_vertices(self, X) -> frozenset[str]:
        """Blocks in which some vertex of ``X`` has a nonzero image."""
        X = set(X)
        return frozenset(s for s in self.sinks if X & self.starts[s])

    def vertices_of(self, blocks) -> frozenset[str]:
        """Vertices lying in the ideal made of ``blocks``."""
        blocks = frozenset(blocks)
        return frozenset(v for v in self.graph.vertices
                         if all(s in blocks for s in self.sinks if v in self.starts[s]))

    def to_pair(self, blocks) -> AdmissiblePair:
        """Admissible pair of the graded ideal made of ``blocks``."""
        return AdmissiblePair(self.vertices_of(blocks), frozenset())

    def ideals(self) -> list[frozenset[str]]:
        out = []
        for r in range(len(self.sinks) + 1):
            out.extend(frozenset(c) for c in combinations(self.sinks, r))
        return out

    @staticmethod
    def product(a: frozenset, b: frozenset) -> frozenset:
        return a & b

    intersect = product

    @staticmethod
    def sum(a: frozenset, b: frozenset) -> frozenset:
        return a | b

    @staticmethod
    def contains(big: frozenset, small: frozenset) -> bool:
        return small <= big


def acyclic_model(g: Graph) -> AcyclicModel:
    """Enumerate every path ending in a sink.  Vertex ``v`` maps to the sum
    of matrix units for the paths starting at ``v``."""
    if g.has_omega:
        raise OracleError("the matrix model needs a graph without infinite emitters")
    if len(g.vertices) > MAX_ACYCLIC_VERTICES:
        raise OracleError(f"the matrix model is limited to {MAX_ACYCLIC_VERTICES} vertices")
    incoming: dict[str, list[str]] = {v: [] for v in g.vertices}
    for b in g.bundles:
        if b.src == b.dst:
            raise OracleError("the matrix model needs an acyclic graph")
        incoming[b.dst].extend([b.src] * int(b.mult))
    paths, starts = {}, {}
    for s in g.vertices:
        if g.out_bundles[s]:
            continue
        found = []
        stack = [(s,)]
        while stack:
            p = stack.pop()
            if len(p) > len(g.vertices):
                raise OracleError("the matrix model needs an acyclic graph")
            found.append(p)
            stack.extend((u,) + p for u in incoming[p[0]])
        paths[s] = tuple(sorted(found))
        starts[s] = frozenset(p[0] for p in found)
    return AcyclicModel(g, paths, starts)


# ---------------------------------------------------------------------------
# one exit-free cycle


def single_cycle(g: Graph) -> Cycle | None:
    """The cycle when ``g`` is exactly one cycle through every vertex."""
    for v in g.vertices:
        out = g.out_bundles[v]
        if len(out) != 1 or out[0].mult != 1:
            return None
    start = g.vertices[0]
    edges, v = [], start
    for _ in range(len(g.vertices)):
        b = g.out_bundles[v][0]
        edges.append((b.id, 0))
        v = b.dst
        if v == start:
            break
    if v != start or len(edges) != len(g.vertices):
        return None
    return Cycle.from_edges(g, edges)


def _sym(f: Poly):
    dom = sympy.GF(f.field.p) if f.field.p else sympy.QQ
    return sympy.Poly(list(reversed([sympy.Rational(a.numerator, a.denominator)
                                     if isinstance(a, Fraction) else a for a in f.coeffs])) or [0],
                      _X, domain=dom)


def _canon(sp) -> tuple:
    """Strip powers of x, make monic, return constant-first coefficients."""
    if sp.is_zero:
        return ()
    x_power = min(m[0] for m in sp.monoms())
    sp = sympy.Poly(sp.as_expr() / _X ** x_power, _X, domain=sp.domain).monic()
    coeffs = list(reversed(sp.all_coeffs()))
    p = sp.get_modulus() if sp.domain.is_FiniteField else 0
    if p:
        return tuple(int(c) % p for c in coeffs)
    return tuple(Fraction(int(c.p), int(c.q)) for c in coeffs)


def laurent_model(op: str, *args: Poly):
    """Ideals of ``K[x, x^-1]`` as canonical generators; ``()`` is the zero
    ideal and ``(1,)`` the whole ring.  ``contains(a, b)`` asks whether
    ``<b>`` lies in ``<a>``."""
    a = _sym(args[0])
    b = _sym(args[1]) if len(args) > 1 else None
    if op == "product":
        return _canon(a * b)
    if op == "sum":
        return _canon(sympy.gcd(a, b)) if not (a.is_zero and b.is_zero) else ()
    if op == "intersect":
        if a.is_zero or b.is_zero:
            return ()
        return _canon(sympy.lcm(a, b))
    if op == "contains":
        if a.is_zero:
            return b.is_zero
        if b.is_zero:
            return True
        K = args[0].field
        return sympy.rem(_sym(Poly(K, _canon(b))), _sym(Poly(K, _canon(a)))).is_zero
    if op == "radical":
        if a.is_zero:
            return ()
        return _canon(sympy.sqf_part(a))
    if op == "canon":
        return _canon(a)
    raise OracleError(f"unknown operation {op!r}")


def _laurent_view(I: Ideal, c: Cycle) -> tuple:
    if not I.is_proper:
        return (I.field.coerce(1),)
    f = I.cyc.get(c)
    return f.coeffs if f is not None else ()


# ---------------------------------------------------------------------------
# admissible-pair poset


def pair_lattice_check(g: Graph) -> list[dict]:
    """Compare graded meet/join with brute-force infimum/supremum over the
    admissible pairs.  Returns the mismatches."""
    pairs = admissible_pairs(g)
    bad = []
    for p, q in combinations(pairs, 2):
        lower = [r for r in pairs if r <= p and r <= q]
        upper = [r for r in pairs if p <= r and q <= r]
        inf = [r for r in lower if all(s <= r for s in lower)]
        sup = [r for r in upper if all(r <= s for s in upper)]
        A, B = graded_ideal(g, p.H, p.S), graded_ideal(g, q.H, q.S)
        meet, join = intersect(A, B).pair, ideal_sum(A, B).pair
        prod = product(A, B).pair
        if len(inf) != 1 or inf[0] != meet or prod != meet:
            bad.append({"op": "meet", "a": str(p), "b": str(q), "engine": str(meet),
                        "oracle": [str(r) for r in inf]})
        if len(sup) != 1 or sup[0] != join:
            bad.append({"op": "join", "a": str(p), "b": str(q), "engine": str(join),
                        "oracle": [str(r) for r in sup]})
    return bad


# ---------------------------------------------------------------------------
# cross checks


@dataclass
class CrossCheckReport:
    oracle: str
    trials: int
    checks: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"oracle": self.oracle, "trials": self.trials, "checks": self.checks,
                "mismatches": self.mismatches}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=str)


def oracle_kind(g: Graph) -> str | None:
    if single_cycle(g) is not None:
        return "laurent"
    if not g.has_omega and g.is_acyclic() and len(g.vertices) <= MAX_ACYCLIC_VERTICES:
        return "acyclic"
    return None


def _random_poly(rng: random.Random, K: Field, max_degree: int) -> Poly:
    r = rng.random()
    if r < 0.05:
        return Poly(K, ())
    if r < 0.1:
        return Poly(K, (rng.randint(1, 5),))
    d = rng.randint(1, max_degree)
    if K.is_rational:
        cs = [Fraction(rng.randint(-6, 6), rng.choice([1, 1, 1, 2, 3])) for _ in range(d + 1)]
    else:
        cs = [rng.randrange(K.p) for _ in range(d + 1)]
    if not any(cs[1:]):
        cs[-1] = 1
    return Poly(K, tuple(cs))


def _random_factored(rng: random.Random, K: Field, max_degree: int) -> Poly:
    """Products of small pieces, so that gcds and repeated factors occur."""
    if rng.random() < 0.5:
        return _random_poly(rng, K, max_degree)
    f = Poly(K, (1,))
    pieces = [_random_poly(rng, K, 2) for _ in range(3)]
    pieces = [p for p in pieces if not p.is_zero()]
    for _ in range(2 * max_degree):
        if not pieces or f.degree >= max_degree:
            break
        p = rng.choice(pieces)
        if f.degree + max(p.degree, 0) > max_degree:
            break
        f = f * p
    return f


def _laurent_trials(g: Graph, c: Cycle, K: Field, trials: int, rng: random.Random,
                    max_degree: int, report: CrossCheckReport) -> None:
    def ideal_of(f: Poly) -> Ideal:
        if f.is_zero():
            return zero_ideal(g, K)
        return make_ideal(g, parts=[(c, f)], field=K)

    for _ in range(trials):
        f, h = _random_factored(rng, K, max_degree), _random_factored(rng, K, max_degree)
        A, B = ideal_of(f), ideal_of(h)
        results = {
            "canon": (_laurent_view(A, c), laurent_model("canon", f)),
            "product": (_laurent_view(product(A, B), c), laurent_model("product", f, h)),
            "sum": (_laurent_view(ideal_sum(A, B), c), laurent_model("sum", f, h)),
            "intersect": (_laurent_view(intersect(A, B), c), laurent_model("intersect", f, h)),
            "contains": (contains(A, B), laurent_model("contains", f, h)),
            "contains_rev": (contains(B, A), laurent_model("contains", h, f)),
        }
        if A.is_proper:
            results["radical"] = (_laurent_view(radical(A), c), laurent_model("radical", f))
        for op, (mine, theirs) in results.items():
            report.checks += 1
            if mine != theirs:
                report.mismatches.append({"op": op, "a": str(f), "b": str(h),
                                          "engine": [str(x) for x in mine] if isinstance(mine, tuple) else mine,
                                          "oracle": [str(x) for x in theirs] if isinstance(theirs, tuple) else theirs})


def _acyclic_trials(g: Graph, K: Field, trials: int, rng: random.Random,
                    report: CrossCheckReport) -> None:
    model = acyclic_model(g)
    lattice = {model.vertices_of(b) for b in model.ideals()}
    engine = {p.H for p in admissible_pairs(g)}
    report.checks += 1
    if lattice != engine or len(lattice) != len(model.ideals()):
        report.mismatches.append({"op": "lattice", "engine": sorted(map(sorted, engine)),
                                  "oracle": sorted(map(sorted, lattice))})
    verts = list(g.vertices)
    for _ in range(trials):
        X = [v for v in verts if rng.random() < 0.4]
        Y = [v for v in verts if rng.random() < 0.4]
        A, B = ideal_from_vertices(g, X, K), ideal_from_vertices(g, Y, K)
        a, b = model.ideal_of_vertices(X), model.ideal_of_vertices(Y)
        results = {
            "generate": (A.H, model.vertices_of(a)),
            "product": (product(A, B).H, model.vertices_of(model.product(a, b))),
            "intersect": (intersect(A, B).H, model.vertices_of(model.intersect(a, b))),
            "sum": (ideal_sum(A, B).H, model.vertices_of(model.sum(a, b))),
            "contains": (contains(A, B), model.contains(a, b)),
            "contains_rev": (contains(B, A), model.contains(b, a)),
        }
        for op, (mine, theirs) in results.items():
            report.checks += 1
            if mine != theirs:
                report.mismatches.append({"op": op, "a": sorted(X), "b": sorted(Y),
                                          "engine": sorted(mine) if isinstance(mine, frozenset) else mine,
                                          "oracle": sorted(theirs) if isinstance(theirs, frozenset) else theirs})


def cross_check(g: Graph, trials: int = 100, seed: int = 0, field: Field = QQ,
                max_degree: int = 6) -> CrossCheckReport:
    """Run ``trials`` random ideal pairs through the engine and the oracle
    that fits ``g``.  Admissible-pair lattice checks run on every graph."""
    kind = oracle_kind(g)
    if kind is None:
        raise OracleError("graph is neither a single cycle nor a small acyclic graph without infinite emitters")
    rng = random.Random(seed)
    report = CrossCheckReport(kind, trials)
    if kind == "laurent":
        _laurent_trials(g, single_cycle(g), field, trials, rng, max_degree, report)
    else:
        _acyclic_trials(g, field, trials, rng, report)
    for bad in pair_lattice_check(g):
        report.mismatches.append(bad)
    report.checks += 1
    return report
