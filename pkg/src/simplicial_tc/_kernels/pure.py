"""Pure-Python contiguity kernel (reference semantics for the compiled twin).

A map space is a pair (domain complex, codomain complex); states are vertex
assignments encoded as bytes (one codomain id per domain vertex).  The one
hot operation is neighbors(): enumerate every assignment g != f such that for
each domain facet F the joint image f(F) | g(F) is a simplex of the codomain.
Any such g is automatically a valid simplicial map (its facet images are
subsets of codomain simplices), so contiguity subsumes validity here.

Enumeration is per-vertex candidate pruning plus backtracking over the joint
facet masks; candidates are tried in ascending id order so the output order
is deterministic and identical across backends.
"""

from __future__ import annotations


class Context:
    __slots__ = ("n_dom", "n_cod", "facet_vertices", "vertex_facets", "cod_facets", "_cache")

    def __init__(self, facet_vertices, vertex_facets, cod_facets, n_dom, n_cod):
        self.n_dom = n_dom
        self.n_cod = n_cod
        self.facet_vertices = tuple(tuple(f) for f in facet_vertices)
        self.vertex_facets = tuple(tuple(v) for v in vertex_facets)
        self.cod_facets = tuple(cod_facets)
        self._cache: dict[int, bool] = {}


def make_context(facet_vertices, vertex_facets, cod_facets, n_dom, n_cod) -> Context:
    return Context(facet_vertices, vertex_facets, cod_facets, n_dom, n_cod)


def _is_simplex(ctx: Context, mask: int) -> bool:
    hit = ctx._cache.get(mask)
    if hit is None:
        hit = any(mask & ~f == 0 for f in ctx.cod_facets)
        ctx._cache[mask] = hit
    return hit


def neighbors(ctx: Context, a: bytes) -> list[bytes]:
    nd = ctx.n_dom
    base = []
    for verts in ctx.facet_vertices:
        m = 0
        for v in verts:
            m |= 1 << a[v]
        base.append(m)

    cand: list[list[int]] = []
    for v in range(nd):
        facs = ctx.vertex_facets[v]
        cand.append(
            [c for c in range(ctx.n_cod) if all(_is_simplex(ctx, base[j] | (1 << c)) for j in facs)]
        )

    out: list[bytes] = []
    g = bytearray(nd)

    def rec(v: int, masks: list[int]) -> None:
        if v == nd:
            gb = bytes(g)
            if gb != a:
                out.append(gb)
            return
        facs = ctx.vertex_facets[v]
        for c in cand[v]:
            bit = 1 << c
            ok = True
            for j in facs:
                if not _is_simplex(ctx, masks[j] | bit):
                    ok = False
                    break
            if not ok:
                continue
            nxt = list(masks)
            for j in facs:
                nxt[j] |= bit
            g[v] = c
            rec(v + 1, nxt)

    rec(0, base)
    return out
