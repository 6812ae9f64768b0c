"""Independent brute-force oracles used to pin expected values.

Everything here works from first principles on tiny instances: simplices via
explicit downward closure, contiguity over all faces (not just facets), map
enumeration by filtering the full assignment product, components by quadratic
graph construction.  Nothing below imports the search machinery it is used to
check.
"""

from __future__ import annotations

import itertools
from collections import deque

from simplicial_tc import Complex


def facet_sets(K: Complex) -> list[frozenset[int]]:
    return [frozenset(ids) for ids in K.facet_vertex_ids]


def downward_closure(K: Complex) -> set[frozenset[int]]:
    out: set[frozenset[int]] = set()
    for f in facet_sets(K):
        verts = sorted(f)
        for r in range(1, len(verts) + 1):
            out.update(frozenset(c) for c in itertools.combinations(verts, r))
    return out


def oracle_is_simplex(K: Complex, vertices) -> bool:
    return frozenset(vertices) in downward_closure(K)


def oracle_valid_maps(dom: Complex, cod: Complex) -> list[tuple[int, ...]]:
    closure = downward_closure(cod)
    facets = facet_sets(dom)
    out = []
    for assignment in itertools.product(range(cod.n_vertices), repeat=dom.n_vertices):
        if all(frozenset(assignment[v] for v in f) in closure for f in facets):
            out.append(assignment)
    return out


def oracle_are_contiguous(dom: Complex, cod: Complex, f, g) -> bool:
    cod_closure = downward_closure(cod)
    for sigma in downward_closure(dom):
        union = frozenset(f[v] for v in sigma) | frozenset(g[v] for v in sigma)
        if union not in cod_closure:
            return False
    return True


def oracle_neighbors(dom: Complex, cod: Complex, f) -> list[tuple[int, ...]]:
    return [
        g
        for g in oracle_valid_maps(dom, cod)
        if g != tuple(f) and oracle_are_contiguous(dom, cod, f, g)
    ]


def oracle_component(dom: Complex, cod: Complex, f) -> set[tuple[int, ...]]:
    """Connected component of f in the contiguity graph, built quadratically."""
    maps = oracle_valid_maps(dom, cod)
    start = tuple(f)
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in maps:
            if b not in seen and oracle_are_contiguous(dom, cod, a, b):
                seen.add(b)
                queue.append(b)
    return seen


def complexes_isomorphic(A: Complex, B: Complex) -> bool:
    if A.n_vertices != B.n_vertices or len(A.facets) != len(B.facets):
        return False
    fa = set(facet_sets(A))
    fb = set(facet_sets(B))
    if sorted(len(f) for f in fa) != sorted(len(f) for f in fb):
        return False
    for perm in itertools.permutations(range(A.n_vertices)):
        if {frozenset(perm[v] for v in f) for f in fa} == fb:
            return True
    return False
