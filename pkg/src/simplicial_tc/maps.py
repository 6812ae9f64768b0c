"""Simplicial maps, contiguity, and contiguity-class decision with witnesses.

Two maps f, g are contiguous when every facet F of the shared domain has
f(F) | g(F) a simplex of the codomain (faces follow by monotonicity, so
facet-level checking is exact).  The contiguity *class* is the transitive
closure; membership is decided by breadth-first search over the implicit
graph whose nodes are the simplicial maps domain -> codomain and whose edges
are contiguity.  The search is exact: "no" is reported only after a full
connected component has been exhausted, and a state budget turns an oversized
search into an honest "unknown".

BFS states are bytes (one codomain id per domain vertex), which caps the
codomain at 255 vertices; orders of magnitude beyond the intended desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterator

from . import _kernels
from .complexes import Complex, embedding_ids, ids_from_mask, is_subcomplex
from .errors import DomainMismatch, InvalidInput, NotSimplicial

DEFAULT_BUDGET = 10**6


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex assignment between two complexes; facet images must be simplices."""

    domain: Complex
    codomain: Complex
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.domain.n_vertices:
            raise InvalidInput("assignment must cover every domain vertex")
        n_cod = self.codomain.n_vertices
        if any(not (0 <= c < n_cod) for c in self.assignment):
            raise InvalidInput("assignment image outside the codomain vertex table")
        asg = self.assignment
        cod_facets = self.codomain.facets
        for verts in self.domain.facet_vertex_ids:
            img = 0
            for v in verts:
                img |= 1 << asg[v]
            if not any(img & ~f == 0 for f in cod_facets):
                labs = tuple(sorted(self.domain.labels[v] for v in verts))
                raise NotSimplicial(f"facet {labs} maps outside the codomain", labs)

    def image_mask(self, mask: int) -> int:
        out = 0
        for v in ids_from_mask(mask):
            out |= 1 << self.assignment[v]
        return out

    def __call__(self, vertex: int) -> int:
        return self.assignment[vertex]

    @property
    def is_constant(self) -> bool:
        first = self.assignment[0]
        return all(c == first for c in self.assignment)


def validate_map(assignment, K: Complex, L: Complex) -> SimplicialMap:
    """Validate a raw vertex assignment as a simplicial map K -> L."""
    return SimplicialMap(K, L, tuple(assignment))


def identity_map(K: Complex) -> SimplicialMap:
    return SimplicialMap(K, K, tuple(range(K.n_vertices)))


def constant_map(K: Complex, L: Complex, v: int) -> SimplicialMap:
    return SimplicialMap(K, L, (v,) * K.n_vertices)


def inclusion_map(sub: Complex, K: Complex) -> SimplicialMap:
    if not is_subcomplex(sub, K):
        raise DomainMismatch("not a subcomplex of the ambient complex")
    return SimplicialMap(sub, K, embedding_ids(sub, K))


def compose(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    if inner.codomain != outer.domain:
        raise DomainMismatch("compose: codomain of inner must equal domain of outer")
    return SimplicialMap(
        inner.domain, outer.codomain, tuple(outer.assignment[c] for c in inner.assignment)
    )


def restrict(f: SimplicialMap, sub: Complex) -> SimplicialMap:
    """Restrict f to a subcomplex of its domain (matched by vertex labels)."""
    if not is_subcomplex(sub, f.domain):
        raise DomainMismatch("restrict: not a subcomplex of the domain")
    emb = embedding_ids(sub, f.domain)
    return SimplicialMap(sub, f.codomain, tuple(f.assignment[p] for p in emb))


def _require_parallel(f: SimplicialMap, g: SimplicialMap) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("maps must share domain and codomain")


def are_contiguous(f: SimplicialMap, g: SimplicialMap) -> bool:
    """Facet-level contiguity test: f(F) | g(F) a simplex for every facet F."""
    _require_parallel(f, g)
    fa, ga = f.assignment, g.assignment
    cod_facets = f.codomain.facets
    for verts in f.domain.facet_vertex_ids:
        joint = 0
        for v in verts:
            joint |= (1 << fa[v]) | (1 << ga[v])
        if not any(joint & ~m == 0 for m in cod_facets):
            return False
    return True


@dataclass(frozen=True)
class ContiguityWitness:
    """A chain of simplicial maps with every consecutive pair contiguous."""

    steps: tuple[SimplicialMap, ...]

    def __post_init__(self):
        if not self.steps:
            raise InvalidInput("a witness needs at least one step")
        first = self.steps[0]
        for s in self.steps[1:]:
            if s.domain != first.domain or s.codomain != first.codomain:
                raise DomainMismatch("witness steps must share domain and codomain")
        for a, b in zip(self.steps, self.steps[1:]):
            if not are_contiguous(a, b):
                raise InvalidInput("consecutive witness steps are not contiguous")

    @property
    def first(self) -> SimplicialMap:
        return self.steps[0]

    @property
    def last(self) -> SimplicialMap:
        return self.steps[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def reverse(self) -> "ContiguityWitness":
        return ContiguityWitness(tuple(reversed(self.steps)))

    def concat(self, other: "ContiguityWitness") -> "ContiguityWitness":
        if self.last.assignment != other.first.assignment:
            raise InvalidInput("witness endpoints do not meet")
        return ContiguityWitness(self.steps + other.steps[1:])


def restrict_witness(w: ContiguityWitness, sub: Complex) -> ContiguityWitness:
    """Step-by-step restriction; contiguity is preserved under restriction."""
    return ContiguityWitness(tuple(restrict(s, sub) for s in w.steps))


@dataclass(frozen=True)
class ContiguityResult:
    verdict: Verdict
    witness: ContiguityWitness | None
    explored: int


# -- implicit-graph search --------------------------------------------------
#
# Class queries run in a reduced space: replacing domain and codomain by
# their strong-collapse cores preserves contiguity classes in both
# directions (f ~ g  iff  r∘f∘j ~ r∘g∘j over the cores), and the reduction
# is constructive -- witnesses found in the core space are lifted back
# through the retraction chains and re-validated.  The BFS itself is exact
# either way; the reduction only shrinks the graph it walks.


class _MapSpace:
    """Search context for simplicial maps domain -> codomain."""

    __slots__ = ("domain", "codomain", "backend", "ctx", "_kernel")

    def __init__(self, domain: Complex, codomain: Complex, backend: str | None = None):
        if codomain.n_vertices > 255:
            raise InvalidInput("class search supports codomains with at most 255 vertices")
        self.domain = domain
        self.codomain = codomain
        kernel = _kernels.select(codomain.n_vertices, backend)
        self.backend = kernel.__name__.rsplit(".", 1)[-1].lstrip("_")
        self.ctx = kernel.make_context(
            domain.facet_vertex_ids,
            domain.vertex_facets,
            codomain.facets,
            domain.n_vertices,
            codomain.n_vertices,
        )
        self._kernel = kernel

    def neighbors(self, a: bytes) -> list[bytes]:
        return self._kernel.neighbors(self.ctx, a)

    def to_map(self, a: bytes) -> SimplicialMap:
        return SimplicialMap(self.domain, self.codomain, tuple(a))


def _bfs(
    space: _MapSpace,
    start: bytes,
    match: Callable[[bytes], bool],
    budget: int,
) -> tuple[bytes | None, dict[bytes, bytes | None], bool]:
    """BFS over the contiguity graph from start until match() or exhaustion.

    Returns (hit, parents, complete); incomplete means the budget (count of
    distinct visited maps) was reached with frontier left unexplored.
    """
    if budget < 1:
        raise InvalidInput("budget must be a positive state count")
    parents: dict[bytes, bytes | None] = {start: None}
    if match(start):
        return start, parents, True
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in space.neighbors(a):
            if b in parents:
                continue
            if len(parents) >= budget:
                return None, parents, False
            parents[b] = a
            if match(b):
                return b, parents, True
            queue.append(b)
    return None, parents, True


def _path_from_parents(parents: dict[bytes, bytes | None], hit: bytes) -> list[bytes]:
    chain = [hit]
    while parents[chain[-1]] is not None:
        chain.append(parents[chain[-1]])
    return chain[::-1]


@lru_cache(maxsize=4096)
def _retraction_chain(K: Complex) -> tuple[Complex, tuple[tuple[int, ...], ...]]:
    """Core of K plus the chain identity -> full retraction (self-maps of K)."""
    from .collapse import core

    c, seq = core(K)
    rho = list(range(K.n_vertices))
    chain = [tuple(rho)]
    for v, u in seq.steps:
        rho = [u if x == v else x for x in rho]
        chain.append(tuple(rho))
    return c, tuple(chain)


@lru_cache(maxsize=1024)
def _class_query(domain: Complex, codomain: Complex) -> "_ClassQuery":
    return _ClassQuery(domain, codomain)


class _ClassQuery:
    """Core-reduced search space for contiguity-class queries L -> K."""

    def __init__(self, domain: Complex, codomain: Complex):
        self.domain = domain
        self.codomain = codomain
        self.dom_core, self.dom_chain = _retraction_chain(domain)
        self.cod_core, self.cod_chain = _retraction_chain(codomain)
        self.dom_emb = embedding_ids(self.dom_core, domain)
        self.cod_emb = embedding_ids(self.cod_core, codomain)
        dom_to = {old: new for new, old in enumerate(self.dom_emb)}
        cod_to = {old: new for new, old in enumerate(self.cod_emb)}
        self.dom_r = tuple(dom_to[x] for x in self.dom_chain[-1])
        self.cod_r = tuple(cod_to[x] for x in self.cod_chain[-1])
        self.space = _MapSpace(self.dom_core, self.cod_core)

    def reduce(self, assignment: tuple[int, ...]) -> bytes:
        return bytes(self.cod_r[assignment[e]] for e in self.dom_emb)

    def lift(self, reduced: bytes) -> tuple[int, ...]:
        """The map i∘h∘r : domain -> codomain for a core-space assignment h."""
        return tuple(self.cod_emb[reduced[self.dom_r[w]]] for w in range(self.domain.n_vertices))

    def bridge(self, assignment: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Chain f ~ ... ~ i∘(reduce f)∘r inside maps domain -> codomain."""
        chain = [tuple(rho[assignment[w]] for w in range(self.domain.n_vertices)) for rho in self.cod_chain]
        retracted = chain[-1]
        chain.extend(
            tuple(retracted[c[w]] for w in range(self.domain.n_vertices)) for c in self.dom_chain[1:]
        )
        return chain

    def build_witness(self, front: tuple[int, ...], path: list[bytes], back: tuple[int, ...] | None) -> ContiguityWitness:
        assigns = self.bridge(front)
        assigns.extend(self.lift(a) for a in path)
        if back is not None:
            assigns.extend(reversed(self.bridge(back)))
        deduped = [assigns[0]]
        for a in assigns[1:]:
            if a != deduped[-1]:
                deduped.append(a)
        return ContiguityWitness(
            tuple(SimplicialMap(self.domain, self.codomain, a) for a in deduped)
        )


def same_contiguity_class(
    f: SimplicialMap, g: SimplicialMap, budget: int = DEFAULT_BUDGET
) -> ContiguityResult:
    """Decide whether f and g lie in one contiguity class.

    Yes comes with a validated witness; no is certified by exhausting the
    connected component of (the reduction of) f, or of g when f's side blows
    the budget first; unknown means both sides exceeded the state budget.
    """
    _require_parallel(f, g)
    if f.assignment == g.assignment:
        return ContiguityResult(Verdict.YES, ContiguityWitness((f,)), 1)
    rq = _class_query(f.domain, f.codomain)
    fa, ga = rq.reduce(f.assignment), rq.reduce(g.assignment)
    if fa == ga:
        return ContiguityResult(
            Verdict.YES, rq.build_witness(f.assignment, [fa], g.assignment), 1
        )
    hit, parents, complete = _bfs(rq.space, fa, lambda a: a == ga, budget)
    explored = len(parents)
    if hit is not None:
        w = rq.build_witness(f.assignment, _path_from_parents(parents, hit), g.assignment)
        return ContiguityResult(Verdict.YES, w, explored)
    if complete:
        return ContiguityResult(Verdict.NO, None, explored)
    hit, parents2, complete = _bfs(rq.space, ga, lambda a: a == fa, budget)
    explored += len(parents2)
    if hit is not None:
        path = _path_from_parents(parents2, hit)[::-1]
        w = rq.build_witness(f.assignment, path, g.assignment)
        return ContiguityResult(Verdict.YES, w, explored)
    if complete:
        return ContiguityResult(Verdict.NO, None, explored)
    return ContiguityResult(Verdict.UNKNOWN, None, explored)


def class_constant_witness(f: SimplicialMap, budget: int = DEFAULT_BUDGET) -> ContiguityResult:
    """Search the contiguity class of f for any constant map."""
    rq = _class_query(f.domain, f.codomain)
    n = rq.dom_core.n_vertices
    fa = rq.reduce(f.assignment)

    def is_const(a: bytes) -> bool:
        return a.count(a[0]) == n

    hit, parents, complete = _bfs(rq.space, fa, is_const, budget)
    if hit is not None:
        w = rq.build_witness(f.assignment, _path_from_parents(parents, hit), None)
        if not w.last.is_constant:
            raise InvalidInput("internal: lifted witness does not end at a constant")
        return ContiguityResult(Verdict.YES, w, len(parents))
    return ContiguityResult(Verdict.NO if complete else Verdict.UNKNOWN, None, len(parents))


def contiguity_component(
    f: SimplicialMap, budget: int = DEFAULT_BUDGET
) -> tuple[frozenset[tuple[int, ...]], bool]:
    """All assignments in the contiguity class of f, and whether it is complete."""
    space = _MapSpace(f.domain, f.codomain)
    _, parents, complete = _bfs(space, bytes(f.assignment), lambda a: False, budget)
    return frozenset(tuple(a) for a in parents), complete


def neighbors(f: SimplicialMap) -> Iterator[SimplicialMap]:
    """All maps g != f contiguous to f, in deterministic enumeration order."""
    space = _MapSpace(f.domain, f.codomain)
    for a in space.neighbors(bytes(f.assignment)):
        yield space.to_map(a)


def witness_between_constants(
    domain: Complex, codomain: Complex, u: int, v: int
) -> ContiguityWitness | None:
    """Chain of constant maps along an edge path u .. v in the codomain.

    Exists iff u and v lie in one edge-path component; this is the
    constructive side of `constants agree on connected complexes`.
    """
    from .complexes import edge_path

    path = edge_path(codomain, u, v)
    if path is None:
        return None
    return ContiguityWitness(tuple(constant_map(domain, codomain, w) for w in path))
