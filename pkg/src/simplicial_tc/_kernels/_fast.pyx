# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled contiguity kernel; pure.py holds the reference semantics.

Codomain simplices are packed into single 64-bit words, so this backend is
limited to codomains with at most 64 vertices; the selector in __init__.py
enforces that.  Enumeration order matches the pure backend exactly.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy


cdef class Context:
    cdef int n_dom, n_cod, n_dfac, n_cfac, max_deg, max_fsize
    cdef int* fverts
    cdef int* fsizes
    cdef int* vfacs
    cdef int* vdegs
    cdef uint64_t* cfacets

    def __cinit__(self, facet_vertices, vertex_facets, cod_facets, int n_dom, int n_cod):
        cdef int j, v, t, i
        self.n_dom = n_dom
        self.n_cod = n_cod
        self.n_dfac = len(facet_vertices)
        self.n_cfac = len(cod_facets)
        self.max_fsize = 1
        self.max_deg = 1
        for f in facet_vertices:
            if len(f) > self.max_fsize:
                self.max_fsize = len(f)
        for fs in vertex_facets:
            if len(fs) > self.max_deg:
                self.max_deg = len(fs)
        self.fverts = <int*> malloc(self.n_dfac * self.max_fsize * sizeof(int))
        self.fsizes = <int*> malloc(self.n_dfac * sizeof(int))
        self.vfacs = <int*> malloc(self.n_dom * self.max_deg * sizeof(int))
        self.vdegs = <int*> malloc(self.n_dom * sizeof(int))
        self.cfacets = <uint64_t*> malloc(self.n_cfac * sizeof(uint64_t))
        for j, f in enumerate(facet_vertices):
            self.fsizes[j] = len(f)
            for t, v in enumerate(f):
                self.fverts[j * self.max_fsize + t] = v
        for v, fs in enumerate(vertex_facets):
            self.vdegs[v] = len(fs)
            for t, j in enumerate(fs):
                self.vfacs[v * self.max_deg + t] = j
        for i, m in enumerate(cod_facets):
            self.cfacets[i] = <uint64_t> m

    def __dealloc__(self):
        if self.fverts != NULL:
            free(self.fverts)
        if self.fsizes != NULL:
            free(self.fsizes)
        if self.vfacs != NULL:
            free(self.vfacs)
        if self.vdegs != NULL:
            free(self.vdegs)
        if self.cfacets != NULL:
            free(self.cfacets)


def make_context(facet_vertices, vertex_facets, cod_facets, n_dom, n_cod):
    return Context(facet_vertices, vertex_facets, cod_facets, n_dom, n_cod)


cdef inline bint _is_simp(Context ctx, uint64_t m) noexcept:
    cdef int i
    for i in range(ctx.n_cfac):
        if (m & ~ctx.cfacets[i]) == 0:
            return True
    return False


def neighbors(Context ctx, bytes a):
    cdef int nd = ctx.n_dom
    cdef int nc = ctx.n_cod
    cdef int nf = ctx.n_dfac
    cdef const unsigned char* ap = a
    cdef uint64_t* lev = <uint64_t*> malloc((nd + 1) * nf * sizeof(uint64_t))
    cdef int* cand = <int*> malloc(nd * nc * sizeof(int))
    cdef int* ccount = <int*> malloc(nd * sizeof(int))
    cdef int* pos = <int*> malloc(nd * sizeof(int))
    cdef unsigned char* g = <unsigned char*> malloc(nd if nd > 0 else 1)
    cdef int v, c, t, j, k, i
    cdef uint64_t m
    cdef bint ok, differs
    out = []
    try:
        for j in range(nf):
            m = 0
            for t in range(ctx.fsizes[j]):
                m |= (<uint64_t> 1) << ap[ctx.fverts[j * ctx.max_fsize + t]]
            lev[j] = m
        for v in range(nd):
            k = 0
            for c in range(nc):
                ok = True
                for t in range(ctx.vdegs[v]):
                    j = ctx.vfacs[v * ctx.max_deg + t]
                    if not _is_simp(ctx, lev[j] | ((<uint64_t> 1) << c)):
                        ok = False
                        break
                if ok:
                    cand[v * nc + k] = c
                    k += 1
            ccount[v] = k
        v = 0
        pos[0] = 0
        while v >= 0:
            if v == nd:
                differs = False
                for i in range(nd):
                    if g[i] != ap[i]:
                        differs = True
                        break
                if differs:
                    out.append(PyBytes_FromStringAndSize(<char*> g, nd))
                v -= 1
                continue
            if pos[v] >= ccount[v]:
                v -= 1
                continue
            c = cand[v * nc + pos[v]]
            pos[v] += 1
            memcpy(lev + (v + 1) * nf, lev + v * nf, nf * sizeof(uint64_t))
            ok = True
            for t in range(ctx.vdegs[v]):
                j = ctx.vfacs[v * ctx.max_deg + t]
                m = lev[(v + 1) * nf + j] | ((<uint64_t> 1) << c)
                if not _is_simp(ctx, m):
                    ok = False
                    break
                lev[(v + 1) * nf + j] = m
            if ok:
                g[v] = <unsigned char> c
                v += 1
                if v < nd:
                    pos[v] = 0
    finally:
        free(lev)
        free(cand)
        free(ccount)
        free(pos)
        free(g)
    return out
