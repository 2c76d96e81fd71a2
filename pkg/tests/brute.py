"""Brute-force reference implementations used as test oracles.  They work
from the raw bundle list and share no code with the package."""

from __future__ import annotations

from itertools import chain, combinations, product

from lpa_ideals.graph import OMEGA, Graph


def subsets(items):
    items = sorted(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def out_edges(g: Graph, v):
    return [b for b in g.bundles if b.src == v]


def regular(g: Graph, v) -> bool:
    es = out_edges(g, v)
    return bool(es) and all(b.mult != OMEGA for b in es)


def reach(g: Graph, v) -> frozenset:
    seen, todo = {v}, [v]
    while todo:
        u = todo.pop()
        for b in out_edges(g, u):
            if b.dst not in seen:
                seen.add(b.dst)
                todo.append(b.dst)
    return frozenset(seen)


def hereditary(g: Graph, H) -> bool:
    return all(b.dst in H for b in g.bundles if b.src in H)


def saturated(g: Graph, H) -> bool:
    for v in g.vertices:
        if v not in H and regular(g, v) and all(b.dst in H for b in out_edges(g, v)):
            return False
    return True


def hs_sets(g: Graph) -> list[frozenset]:
    return [H for H in subsets(g.vertices) if hereditary(g, H) and saturated(g, H)]


def closure(g: Graph, X) -> frozenset:
    cands = [H for H in hs_sets(g) if frozenset(X) <= H]
    return frozenset.intersection(*cands)


def downward_directed(g: Graph, M) -> bool:
    return all(reach(g, u) & reach(g, w) & M for u in M for w in M)


def maximal_tails(g: Graph) -> set[frozenset]:
    out = set()
    for M in subsets(g.vertices):
        if not M:
            continue
        mt1 = all(w in M for v in M for w in g.vertices if v in reach(g, w))
        mt2 = all(any(b.dst in M for b in out_edges(g, v)) for v in M if regular(g, v))
        if mt1 and mt2 and downward_directed(g, M):
            out.add(M)
    return out


def breaking(g: Graph, H) -> frozenset:
    out = set()
    for w in g.vertices:
        es = out_edges(g, w)
        if w in H or not any(b.mult == OMEGA for b in es):
            continue
        outside = [b for b in es if b.dst not in H]
        if outside and all(b.mult != OMEGA for b in outside):
            out.add(w)
    return frozenset(out)


def admissible_pairs(g: Graph) -> set[tuple[frozenset, frozenset]]:
    return {(H, S) for H in hs_sets(g) for S in subsets(breaking(g, H))}


def edge_cycles(g: Graph) -> list[tuple]:
    """Every edge-level cycle as a frozenset of (bundle, index); omega
    bundles are cut to two edges, enough to see parallel exits."""
    edges = [(b.id, i, b.src, b.dst) for b in g.bundles for i in range(2 if b.mult == OMEGA else int(b.mult))]
    found = set()

    def walk(start, u, used, seen):
        for e in edges:
            if e[2] != u:
                continue
            if e[3] == start:
                found.add(frozenset(used + [e]))
            elif e[3] not in seen:
                walk(start, e[3], used + [e], seen | {e[3]})

    for v in g.vertices:
        walk(v, v, [], {v})
    return [tuple(sorted(c)) for c in found]


def cycle_vertices(c) -> frozenset:
    return frozenset(e[2] for e in c)


def cycles_without_K(g: Graph) -> set[frozenset]:
    cs = edge_cycles(g)
    return {cycle_vertices(c) for c in cs
            if not any(d != c and cycle_vertices(d) & cycle_vertices(c) for d in cs)}


def cycles_without_exits(g: Graph) -> set[frozenset]:
    out = set()
    for c in edge_cycles(g):
        vs = cycle_vertices(c)
        if all(sum(2 if b.mult == OMEGA else b.mult for b in out_edges(g, v)) == 1 for v in vs):
            out.add(vs)
    return out
