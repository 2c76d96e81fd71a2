"""Finite directed graphs with edge bundles, and the vertex-set invariants
(hereditary/saturated sets, breaking vertices, maximal tails, cycles,
quotient graphs, admissible pairs) that index the ideals of a Leavitt path
algebra.

Edges come in *bundles* ``(id, src, dst, mult)``.  ``mult`` is a positive
int or :data:`OMEGA`; an omega bundle stands for countably many parallel
edges, which is how infinite emitters are presented finitely.  Individual
edges are addressed as ``(bundle_id, index)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "OMEGA",
    "AdmissiblePair",
    "Bundle",
    "Cycle",
    "CycleCapExceeded",
    "Graph",
    "GraphError",
    "TailCover",
    "admissible_pairs",
    "breaking_vertices",
    "condition_K",
    "condition_L",
    "cycles_without_K",
    "cycles_without_exits",
    "hereditary_saturated_closure",
    "hereditary_saturated_sets",
    "irredundant_tail_cover",
    "is_chain",
    "is_downward_directed",
    "is_hereditary",
    "is_saturated",
    "maximal_tails",
    "quotient_graph",
    "quotient_pair",
    "simple_cycles",
]

OMEGA = math.inf
DEFAULT_MAX_CYCLES = 100_000
PRIME = "'"


class GraphError(ValueError):
    pass


class CycleCapExceeded(GraphError):
    pass


@dataclass(frozen=True)
class Bundle:
    id: str
    src: str
    dst: str
    mult: int | float = 1

    @property
    def is_omega(self) -> bool:
        return self.mult == OMEGA


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    bundles: tuple[Bundle, ...] = ()

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if not verts:
            raise GraphError("a graph needs at least one vertex")
        object.__setattr__(self, "vertices", verts)
        vset = set(verts)
        ids = set()
        for b in self.bundles:
            if b.src not in vset or b.dst not in vset:
                raise GraphError(f"bundle {b.id!r} has an undeclared endpoint")
            if b.id in ids:
                raise GraphError(f"duplicate bundle id {b.id!r}")
            if not (b.mult == OMEGA or (isinstance(b.mult, int) and b.mult >= 1)):
                raise GraphError(f"bundle {b.id!r}: multiplicity must be a positive int or omega")
            ids.add(b.id)
        object.__setattr__(self, "bundles", tuple(sorted(self.bundles, key=lambda b: b.id)))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Sequence] = ()) -> "Graph":
        """Edges are ``(src, dst)``, ``(src, dst, mult)`` or ``(src, dst, mult, id)``;
        default ids are ``e0, e1, ...``."""
        bundles = []
        for k, e in enumerate(edges):
            src, dst = e[0], e[1]
            mult = e[2] if len(e) > 2 else 1
            bid = e[3] if len(e) > 3 else f"e{k}"
            bundles.append(Bundle(bid, src, dst, mult))
        return cls(tuple(vertices), tuple(bundles))

    # ---- local structure

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def bundle_by_id(self) -> Mapping[str, Bundle]:
        return {b.id: b for b in self.bundles}

    @cached_property
    def out_bundles(self) -> Mapping[str, tuple[Bundle, ...]]:
        out: dict[str, list[Bundle]] = {v: [] for v in self.vertices}
        for b in self.bundles:
            out[b.src].append(b)
        return {v: tuple(bs) for v, bs in out.items()}

    @cached_property
    def in_bundles(self) -> Mapping[str, tuple[Bundle, ...]]:
        inc: dict[str, list[Bundle]] = {v: [] for v in self.vertices}
        for b in self.bundles:
            inc[b.dst].append(b)
        return {v: tuple(bs) for v, bs in inc.items()}

    def out_mult(self, v: str) -> int | float:
        return sum(b.mult for b in self.out_bundles[v])

    def successors(self, v: str) -> frozenset[str]:
        return frozenset(b.dst for b in self.out_bundles[v])

    def is_sink(self, v: str) -> bool:
        return not self.out_bundles[v]

    def is_infinite_emitter(self, v: str) -> bool:
        return any(b.is_omega for b in self.out_bundles[v])

    def is_regular(self, v: str) -> bool:
        return bool(self.out_bundles[v]) and not self.is_infinite_emitter(v)

    @cached_property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.is_sink(v))

    @cached_property
    def infinite_emitters(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.is_infinite_emitter(v))

    @cached_property
    def has_omega(self) -> bool:
        return any(b.is_omega for b in self.bundles)

    # ---- reachability; u >= v iff v in reach[u]

    @cached_property
    def reach(self) -> Mapping[str, frozenset[str]]:
        out = {}
        for v in self.vertices:
            seen = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.successors(u):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out[v] = frozenset(seen)
        return out

    def geq(self, u: str, v: str) -> bool:
        return v in self.reach[u]

    def tree_above(self, v: str) -> frozenset[str]:
        """``M(v) = {w : w >= v}``."""
        return frozenset(w for w in self.vertices if v in self.reach[w])

    def is_acyclic(self) -> bool:
        return not any(self.geq(b.dst, b.src) for b in self.bundles)

    def check_vertices(self, X: Iterable[str]) -> frozenset[str]:
        X = frozenset(X)
        unknown = X - self.vertex_set
        if unknown:
            raise GraphError(f"unknown vertices: {sorted(unknown)}")
        return X


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class Cycle:
    """A cycle as concrete edges ``(bundle_id, index)``, rotated so the least
    vertex comes first.  Equality is therefore rotation-invariant."""

    edges: tuple[tuple[str, int], ...]
    vertices: tuple[str, ...]

    @classmethod
    def from_edges(cls, g: Graph, edges: Sequence[tuple[str, int]]) -> "Cycle":
        if not edges:
            raise GraphError("a cycle needs at least one edge")
        bs = []
        for bid, idx in edges:
            b = g.bundle_by_id.get(bid)
            if b is None:
                raise GraphError(f"unknown bundle {bid!r}")
            if not (0 <= idx < b.mult):
                raise GraphError(f"edge index {idx} out of range for bundle {bid!r}")
            bs.append(b)
        n = len(bs)
        for i in range(n):
            if bs[i].dst != bs[(i + 1) % n].src:
                raise GraphError("edges do not form a closed path")
        srcs = [b.src for b in bs]
        if len(set(srcs)) != n:
            raise GraphError("closed path repeats a vertex; not a cycle")
        k = srcs.index(min(srcs))
        edges = tuple((bid, int(idx)) for bid, idx in edges)
        return cls(edges[k:] + edges[:k], tuple(srcs[k:] + srcs[:k]))

    @classmethod
    def from_vertices(cls, g: Graph, verts: Sequence[str]) -> "Cycle":
        """Cycle through ``verts`` in order; each step must be a single edge."""
        edges = []
        n = len(verts)
        for i in range(n):
            u, w = verts[i], verts[(i + 1) % n]
            cands = [b for b in g.out_bundles.get(u, ()) if b.dst == w]
            if len(cands) != 1 or cands[0].mult != 1:
                raise GraphError(f"step {u}->{w} is not a unique edge; give the cycle as edges")
            edges.append((cands[0].id, 0))
        return cls.from_edges(g, edges)

    @classmethod
    def parse(cls, g: Graph, items: Sequence[str]) -> "Cycle":
        """Edge labels ``"bundle#index"`` or a vertex sequence."""
        if items and all("#" in s for s in items):
            edges = []
            for s in items:
                bid, _, idx = s.rpartition("#")
                edges.append((bid, int(idx)))
            return cls.from_edges(g, edges)
        return cls.from_vertices(g, items)

    @property
    def base(self) -> str:
        return self.vertices[0]

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def labels(self) -> list[str]:
        return [f"{bid}#{idx}" for bid, idx in self.edges]

    def sort_key(self) -> tuple:
        return (self.vertices, self.edges)

    def __str__(self) -> str:
        return "(" + " -> ".join(self.vertices) + ")"


def simple_cycles(g: Graph, max_cycles: int = DEFAULT_MAX_CYCLES) -> list[tuple[tuple[str, ...], int | float]]:
    """Enumerate vertex-level simple cycles by DFS.

    Returns ``[(vertices, count)]`` where ``vertices`` starts at its least
    vertex and ``count`` is the number of edge-level cycles realising it
    (OMEGA when an omega bundle lies on it).  Raises
    :class:`CycleCapExceeded` rather than truncating.
    """
    step: dict[tuple[str, str], int | float] = {}
    for b in g.bundles:
        step[(b.src, b.dst)] = step.get((b.src, b.dst), 0) + b.mult
    order = {v: i for i, v in enumerate(g.vertices)}
    out = []

    for start in g.vertices:
        s_rank = order[start]
        path = [start]
        on_path = {start}

        def dfs(u: str) -> None:
            for w in sorted(g.successors(u)):
                if w == start:
                    count = 1
                    for i in range(len(path)):
                        count *= step[(path[i], path[(i + 1) % len(path)])]
                    out.append((tuple(path), count))
                    if len(out) > max_cycles:
                        raise CycleCapExceeded(f"more than {max_cycles} simple cycles")
                elif order[w] > s_rank and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    dfs(w)
                    path.pop()
                    on_path.discard(w)

        dfs(start)
    return out


def _single_out_edge(g: Graph, v: str) -> Bundle | None:
    bs = g.out_bundles[v]
    if len(bs) == 1 and bs[0].mult == 1:
        return bs[0]
    return None


def cycles_without_exits(g: Graph) -> list[Cycle]:
    """Cycles none of whose vertices emits an edge off the cycle."""
    found = {}
    for v in g.vertices:
        path = []
        seen = {}
        u = v
        while u not in seen:
            b = _single_out_edge(g, u)
            if b is None:
                break
            seen[u] = len(path)
            path.append(b)
            u = b.dst
        else:
            loop = path[seen[u]:]
            c = Cycle.from_edges(g, [(b.id, 0) for b in loop])
            found[c.edges] = c
    return sorted(found.values(), key=Cycle.sort_key)


def _sccs(g: Graph) -> list[frozenset[str]]:
    comps = {}
    for v in g.vertices:
        comp = frozenset(w for w in g.reach[v] if v in g.reach[w])
        comps[comp] = None
    return list(comps)


def cycles_without_K(g: Graph) -> list[Cycle]:
    """Cycles such that no vertex on them lies on a different cycle.

    These are exactly the strongly connected components carrying exactly
    one internal edge per vertex.
    """
    out = []
    for comp in _sccs(g):
        internal = [b for b in g.bundles if b.src in comp and b.dst in comp]
        if not internal or sum(b.mult for b in internal) != len(comp):
            continue
        nxt = {b.src: b for b in internal}
        start = min(comp)
        edges = []
        u = start
        for _ in range(len(comp)):
            edges.append((nxt[u].id, 0))
            u = nxt[u].dst
        out.append(Cycle.from_edges(g, edges))
    return sorted(out, key=Cycle.sort_key)


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    witness: Cycle | None = None

    def __bool__(self) -> bool:
        return self.holds


def condition_K(g: Graph) -> ConditionReport:
    """Condition (K); on failure the witness is a cycle without (K)."""
    bad = cycles_without_K(g)
    return ConditionReport(not bad, bad[0] if bad else None)


def condition_L(g: Graph) -> ConditionReport:
    """Condition (L): every cycle has an exit."""
    bad = cycles_without_exits(g)
    return ConditionReport(not bad, bad[0] if bad else None)


# ---------------------------------------------------------------------------
# hereditary saturated sets


def is_hereditary(g: Graph, H: Iterable[str]) -> bool:
    H = frozenset(H)
    return all(g.reach[v] <= H for v in H)


def is_saturated(g: Graph, H: Iterable[str]) -> bool:
    H = frozenset(H)
    return not any(v not in H and g.is_regular(v) and g.successors(v) <= H for v in g.vertices)


def hereditary_saturated_closure(g: Graph, X: Iterable[str]) -> frozenset[str]:
    X = g.check_vertices(X)
    H = set()
    for v in X:
        H |= g.reach[v]
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v not in H and g.is_regular(v) and g.successors(v) <= H:
                H.add(v)
                changed = True
    return frozenset(H)


def hereditary_saturated_sets(g: Graph) -> list[frozenset[str]]:
    """All hereditary saturated subsets, found by closing upward from the
    empty set one generator at a time."""
    bottom = hereditary_saturated_closure(g, ())
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for H in frontier:
            for v in g.vertices:
                if v in H:
                    continue
                K = hereditary_saturated_closure(g, H | {v})
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def _require_hs(g: Graph, H: frozenset[str]) -> None:
    if not (is_hereditary(g, H) and is_saturated(g, H)):
        raise GraphError(f"{sorted(H)} is not hereditary and saturated")


def breaking_vertices(g: Graph, H: Iterable[str]) -> frozenset[str]:
    """Infinite emitters outside H sending finitely many, and at least one,
    edges out of H."""
    H = g.check_vertices(H)
    _require_hs(g, H)
    return _breaking(g, H)


def _breaking(g: Graph, H: frozenset[str]) -> frozenset[str]:
    out = set()
    for w in g.infinite_emitters:
        if w in H:
            continue
        outside = sum(b.mult for b in g.out_bundles[w] if b.dst not in H)
        if 0 < outside < OMEGA:
            out.add(w)
    return frozenset(out)


# ---------------------------------------------------------------------------
# admissible pairs and quotients


@dataclass(frozen=True)
class AdmissiblePair:
    H: frozenset[str]
    S: frozenset[str] = frozenset()

    def __le__(self, other: "AdmissiblePair") -> bool:
        return self.H <= other.H and self.S <= (other.H | other.S)

    def __lt__(self, other: "AdmissiblePair") -> bool:
        return self <= other and self != other

    def sort_key(self) -> tuple:
        return (len(self.H), sorted(self.H), len(self.S), sorted(self.S))

    def __str__(self) -> str:
        return "({" + ",".join(sorted(self.H)) + "}, {" + ",".join(sorted(self.S)) + "})"


def check_admissible(g: Graph, H: Iterable[str], S: Iterable[str] = ()) -> AdmissiblePair:
    H = g.check_vertices(H)
    S = g.check_vertices(S)
    _require_hs(g, H)
    extra = S - _breaking(g, H)
    if extra:
        raise GraphError(f"{sorted(extra)} are not breaking vertices of {sorted(H)}")
    return AdmissiblePair(H, S)


def admissible_pairs(g: Graph) -> list[AdmissiblePair]:
    out = []
    for H in hereditary_saturated_sets(g):
        B = sorted(_breaking(g, H))
        for r in range(len(B) + 1):
            for S in itertools.combinations(B, r):
                out.append(AdmissiblePair(H, frozenset(S)))
    return sorted(out, key=AdmissiblePair.sort_key)


def is_chain(pairs: Sequence[AdmissiblePair]) -> bool:
    return incomparable_pair(pairs) is None


def incomparable_pair(pairs: Sequence[AdmissiblePair]):
    for a, b in itertools.combinations(pairs, 2):
        if not (a <= b or b <= a):
            return a, b
    return None


def quotient_graph(g: Graph, pair: AdmissiblePair) -> Graph:
    """The graph ``E \\ (H, S)``: drop H, add a primed sink ``v'`` for each
    ``v`` in ``B_H \\ S`` and a primed copy of every edge into such ``v``."""
    pair = check_admissible(g, pair.H, pair.S)
    return _quotient(g, pair.H, pair.S)


def _quotient(g: Graph, H: frozenset[str], S: frozenset[str]) -> Graph:
    if not H and not S:
        return g
    primed = _breaking(g, H) - S
    verts = [v for v in g.vertices if v not in H]
    for v in primed:
        if v + PRIME in g.vertex_set:
            raise GraphError(f"vertex name {v + PRIME!r} collides with a primed quotient vertex")
        verts.append(v + PRIME)
    if not verts:
        raise GraphError("quotient by the whole vertex set is empty")
    bundles = []
    for b in g.bundles:
        if b.dst not in H:
            bundles.append(b)
        if b.dst in primed:
            bundles.append(Bundle(b.id + PRIME, b.src, b.dst + PRIME, b.mult))
    return Graph(tuple(verts), tuple(bundles))


def quotient_pair(g: Graph, base: AdmissiblePair, pair: AdmissiblePair) -> AdmissiblePair:
    """Image of ``pair`` (lying above ``base``) in the quotient graph
    ``E \\ base``, under ``L(E) / I(base) ~ L(E \\ base)``.

    For ``v`` in ``B_H \\ S`` the quotient vertex ``v`` stands for the sum of
    ``ee*`` over the edges leaving H, and ``v'`` stands for ``v^H``.  So
    ``v`` joins the image when all those edges land in the new H, and ``v'``
    joins when ``v`` is in the new H or the new S.
    """
    H, S = base.H, base.S
    H2, S2 = pair.H, pair.S
    if not (base <= pair):
        raise GraphError(f"{pair} does not lie above {base}")
    lost = _breaking(g, H) - S
    HQ = set(H2 - H)
    for v in lost:
        if all(b.dst in H2 for b in g.out_bundles[v] if b.dst not in H):
            HQ.add(v)
        if v in H2 or v in S2:
            HQ.add(v + PRIME)
    # only vertices with an omega bundle leaving H are infinite emitters in Q
    SQ = {w for w in S2 if any(b.is_omega and b.dst not in H for b in g.out_bundles[w])}
    return AdmissiblePair(frozenset(HQ), frozenset(SQ))


# ---------------------------------------------------------------------------
# maximal tails


def is_downward_directed(g: Graph, D: Iterable[str]) -> bool:
    D = frozenset(D)
    if not D:
        return False
    for u, v in itertools.combinations(sorted(D), 2):
        if not (g.reach[u] & g.reach[v] & D):
            return False
    return True


def maximal_tails(g: Graph) -> list[frozenset[str]]:
    """Complements of hereditary saturated sets that are downward directed."""
    out = []
    for H in hereditary_saturated_sets(g):
        M = g.vertex_set - H
        if M and is_downward_directed(g, M):
            out.append(M)
    return sorted(out, key=lambda s: sorted(s))


@dataclass(frozen=True)
class TailCover:
    """Irredundant covers of the vertex set by maximal tails.

    ``tails`` is the chosen cover (lexicographically least among those of
    maximum size ``n``); ``maximum_covers`` lists every cover of that size
    and ``sizes`` every size any irredundant cover attains.
    """

    tails: tuple[frozenset[str], ...]
    maximum_covers: tuple[tuple[frozenset[str], ...], ...]
    sizes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.tails)


def _cover_key(cover) -> list:
    return sorted(sorted(t) for t in cover)


def irredundant_tail_cover(g: Graph, required_min: int = 0, max_tails: int = 20) -> TailCover | None:
    if required_min < 0:
        raise ValueError("required_min must be non-negative")
    tails = maximal_tails(g)
    if len(tails) > max_tails:
        raise GraphError(f"{len(tails)} maximal tails; exhaustive cover search capped at {max_tails}")
    V = g.vertex_set
    covers = []
    for r in range(1, len(tails) + 1):
        for fam in itertools.combinations(tails, r):
            if frozenset().union(*fam) != V:
                continue
            redundant = any(
                fam[j] <= frozenset().union(*(fam[i] for i in range(r) if i != j)) for j in range(r))
            if not redundant:
                covers.append(fam)
    if not covers:
        return None
    n = max(len(c) for c in covers)
    if n < required_min:
        return None
    best = sorted((tuple(sorted(c, key=sorted)) for c in covers if len(c) == n), key=_cover_key)
    return TailCover(best[0], tuple(best), tuple(sorted({len(c) for c in covers})))
