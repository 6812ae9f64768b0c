"""Dominated vertices, strong collapses, cores, and contraction witnesses.

A vertex v is dominated by v' when every facet containing v also contains v';
deleting a dominated vertex is an elementary strong collapse and preserves
both invariants computed downstream.  The core is the fixed point of greedy
deletion; with the deterministic lowest-id rule the emitted collapse sequence
is reproducible, and the core itself is independent of the rule up to
isomorphism (tests replay alternate orders to confirm).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .complexes import Complex, _antichain, _canonical_facet_order, ids_from_mask, mask_from_ids
from .errors import InvalidInput
from .maps import ContiguityWitness, SimplicialMap


def dominated_vertices(K: Complex) -> list[tuple[int, int]]:
    """All pairs (v, v') with v != v' and every facet containing v containing v'."""
    out = []
    for v in range(K.n_vertices):
        inter = ~0
        for j in K.vertex_facets[v]:
            inter &= K.facets[j]
        for u in ids_from_mask(inter & ~(1 << v)):
            out.append((v, u))
    return out


def _delete_vertex(K: Complex, v: int) -> Complex:
    """Remove a vertex, truncate its facets, re-densify ids (labels survive)."""
    masks = _antichain(m & ~(1 << v) for m in K.facets)
    used = ids_from_mask(mask_from_ids(w for m in masks for w in ids_from_mask(m)))
    old_to_new = {old: new for new, old in enumerate(used)}
    labels = tuple(K.labels[old] for old in used)
    facets = tuple(mask_from_ids(old_to_new[w] for w in ids_from_mask(m)) for m in masks)
    return Complex(labels, _canonical_facet_order(labels, facets))


@dataclass(frozen=True)
class CollapseSequence:
    """Replayable elementary strong collapses; steps use ids of `start`."""

    start: Complex
    end: Complex
    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if replay(self) != self.end:
            raise InvalidInput("collapse steps do not replay from start to end")

    def step_labels(self) -> tuple[tuple[str, str], ...]:
        return tuple((self.start.labels[v], self.start.labels[u]) for v, u in self.steps)


def replay(seq: CollapseSequence) -> Complex:
    """Re-run the deletions, checking domination at every step."""
    current = seq.start
    for v_start, u_start in seq.steps:
        v_lab = seq.start.labels[v_start]
        u_lab = seq.start.labels[u_start]
        v = current.id(v_lab)
        u = current.id(u_lab)
        ubit = 1 << u
        for j in current.vertex_facets[v]:
            if not current.facets[j] & ubit:
                raise InvalidInput(f"step deletes {v_lab!r} but it is not dominated by {u_lab!r}")
        current = _delete_vertex(current, v)
    return current


@lru_cache(maxsize=8192)
def core(K: Complex) -> tuple[Complex, CollapseSequence]:
    """Delete the lowest-id dominated vertex until none remains."""
    current = K
    steps: list[tuple[int, int]] = []
    while True:
        doms = dominated_vertices(current)
        if not doms:
            break
        v, u = min(doms)
        steps.append((K.id(current.labels[v]), K.id(current.labels[u])))
        current = _delete_vertex(current, v)
    return current, CollapseSequence(K, current, tuple(steps))


@lru_cache(maxsize=4096)
def is_strongly_collapsible(K: Complex) -> bool:
    """True iff the core of K is a single vertex."""
    return core(K)[0].n_vertices == 1


def add_cone_facet(K: Complex, base_mask: int, new_label: str) -> Complex:
    """Elementary strong expansion fixture: one new vertex over a simplex of K.

    The new vertex is dominated by every vertex of base_mask, and deleting it
    gives back K, so the result has the strong homotopy type of K.
    """
    from .complexes import _assemble_complex, _check_label

    if not K.is_simplex(base_mask):
        raise InvalidInput("expansion base must be a simplex of K")
    _check_label(new_label)
    if new_label in K.labels:
        raise InvalidInput(f"label {new_label!r} already present")
    facets = [
        tuple(K.labels[v] for v in ids_from_mask(m)) for m in K.facets
    ]
    facets.append(tuple(K.labels[v] for v in ids_from_mask(base_mask)) + (new_label,))
    # existing labels may be pair labels from a product, so skip the
    # input-label reservations for them
    return _assemble_complex(facets, check_labels=False)


@lru_cache(maxsize=2048)
def contraction_witness(K: Complex) -> ContiguityWitness | None:
    """Witness 1_K ~ constant when K is strongly collapsible, else None.

    Each collapse step (delete v, dominated by u) induces the retraction
    sending v to u and fixing everything else; the retraction is contiguous
    to the identity, and composing the chain contracts the identity to the
    constant map at the core vertex.
    """
    c, seq = core(K)
    if c.n_vertices != 1:
        return None
    n = K.n_vertices
    rho = list(range(n))
    chain = [SimplicialMap(K, K, tuple(rho))]
    for v, u in seq.steps:
        rho = [u if x == v else x for x in rho]
        chain.append(SimplicialMap(K, K, tuple(rho)))
    return ContiguityWitness(tuple(chain))
