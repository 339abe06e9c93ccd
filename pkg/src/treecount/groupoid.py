"""Coefficient jumps, normalization onto a matching, rank, genericity.

Coefficients stay monic Laurent monomials throughout: a vertex carries an
integer exponent vector over formal symbols ``a_w`` (one symbol per vertex
of the tree), and a jump of ``u`` over a neighbor ``v`` clears the vector
at ``u`` while dividing every other neighbor of ``v`` by it.  Normalizing
along a maximum matching pushes all coefficients onto the red vertices the
matching misses; the order of jumps is a linear extension of an explicit
acyclic auxiliary graph and the result does not depend on which extension
is used.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping, Sequence

from .coloring import (
    Color,
    Coloring,
    RedGreenComponent,
    RedGreenPartition,
)
from .matchings import (
    admissible_sets,
    maximum_matching_size,
    shared_green_blocks,
    uncovered_vertices,
)
from .trees import Tree

Edge = tuple[int, int]
ExponentVector = dict[int, int]


class JumpError(ValueError):
    """A jump of a kind the groupoid does not admit."""


@dataclass(frozen=True)
class CoefficientState:
    """Per-vertex exponent vectors over the symbols ``a_w``."""

    coeff: tuple[tuple[tuple[int, int], ...], ...]

    @staticmethod
    def from_dicts(vectors: Sequence[Mapping[int, int]]) -> CoefficientState:
        return CoefficientState(
            tuple(
                tuple(sorted((s, e) for s, e in vec.items() if e))
                for vec in vectors
            )
        )

    @staticmethod
    def initial(t: Tree) -> CoefficientState:
        """The generic start: symbol ``a_v`` with exponent 1 at every vertex."""
        return CoefficientState.from_dicts([{v: 1} for v in range(t.n)])

    def vector(self, v: int) -> ExponentVector:
        return dict(self.coeff[v])

    def vectors(self) -> list[ExponentVector]:
        return [dict(c) for c in self.coeff]

    def support(self) -> list[int]:
        return [v for v, c in enumerate(self.coeff) if c]

    def symbols(self, v: int) -> set[int]:
        return {s for s, _ in self.coeff[v]}

    def is_trivial(self, v: int) -> bool:
        return not self.coeff[v]


def _allowed_jump(t: Tree, c: Coloring, u: int, v: int) -> bool:
    cu, cv = c.colors[u], c.colors[v]
    if cu is Color.RED and cv is Color.GREEN:
        return True
    if cu is Color.GREEN and cv is Color.RED:
        return True
    if cu is Color.ORANGE and cv is Color.ORANGE:
        e = (u, v) if u < v else (v, u)
        return e in c.dominoes
    return False


def jump(s: CoefficientState, t: Tree, c: Coloring, u: int, v: int) -> CoefficientState:
    """Jump the coefficient of ``u`` over its neighbor ``v``.

    The vector at ``u`` becomes trivial and every other neighbor of ``v`` is
    divided by the old vector; ``v`` itself is untouched.  Only red-over-
    green, green-over-red and orange-over-matched-orange jumps are allowed.
    """
    if not t.has_edge(u, v):
        raise JumpError(f"{u}-{v} is not an edge")
    if not _allowed_jump(t, c, u, v):
        raise JumpError(
            f"jump {u} over {v} is not red/green, green/red or a matched orange pair"
        )
    old = s.vector(u)
    vectors = s.vectors()
    for w in t.neighbors[v]:
        if w == u:
            vectors[u] = {}
        else:
            vec = vectors[w]
            for sym, e in old.items():
                vec[sym] = vec.get(sym, 0) - e
    return CoefficientState.from_dicts(vectors)


def jump_graph(t: Tree, m: frozenset[Edge]) -> dict[int, set[int]]:
    """The auxiliary oriented graph: u -> w when u-v is a domino of the
    matching and v-w another edge of the tree."""
    partner = {}
    for a, b in m:
        partner[a] = b
        partner[b] = a
    out: dict[int, set[int]] = {v: set() for v in range(t.n)}
    for u, v in partner.items():
        for w in t.neighbors[v]:
            if w != u:
                out[u].add(w)
    return out

def _topological_order(covered: list[int], succ: dict[int, set[int]]) -> list[int]:
    """Smallest-vertex-first linear extension of the jump graph on the
    covered vertices; raises if a cycle shows up (it never should)."""
    covered_set = set(covered)
    indeg = {v: 0 for v in covered}
    for u in covered:
        for w in succ[u]:
            if w in covered_set:
                indeg[w] += 1
    ready = [v for v in covered if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for w in succ[u]:
            if w in covered_set:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
    if len(order) != len(covered):
        raise AssertionError("jump graph has an oriented cycle")
    return order


def is_linear_extension(order: Sequence[int], succ: dict[int, set[int]]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    return all(
        pos[u] < pos[w]
        for u in order
        for w in succ[u]
        if w in pos
    )


def normalize_to_matching(
    s: CoefficientState,
    t: Tree,
    c: Coloring,
    m: frozenset[Edge],
    order: Sequence[int] | None = None,
) -> CoefficientState:
    """Push all coefficients onto the red vertices the matching misses.

    Every covered vertex jumps exactly once, over its matched partner, in a
    linear extension of the jump graph.  Passing ``order`` overrides the
    default extension; it is validated and exists only so tests can assert
    order-independence.
    """
    if len(m) != maximum_matching_size(t):
        raise ValueError("matching is not maximum")
    partner = {}
    for a, b in m:
        partner[a] = b
        partner[b] = a
    succ = jump_graph(t, m)
    covered = sorted(partner)
    if order is None:
        order = _topological_order(covered, succ)
    else:
        order = list(order)
        if sorted(order) != covered or not is_linear_extension(order, succ):
            raise ValueError("order is not a linear extension of the jump graph")
    state = s
    for u in order:
        state = jump(state, t, c, u, partner[u])
    uncovered = set(uncovered_vertices(t, m))
    bad = [v for v in state.support() if v not in uncovered]
    if bad:
        raise AssertionError(f"normalized state supported off the matching gaps: {bad}")
    return state


# ---------------------------------------------------------------------------
# Rank
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankProfile:
    """Per-component dimensions split by the generic/versal choice."""

    component_dimensions: tuple[int, ...]
    generic: tuple[bool, ...]

    @property
    def rank(self) -> int:
        return sum(d for d, g in zip(self.component_dimensions, self.generic) if g)

    @property
    def versal_rank(self) -> int:
        return sum(d for d, g in zip(self.component_dimensions, self.generic) if not g)


def rank_profile(partition: RedGreenPartition, generic_flags: Sequence[bool]) -> RankProfile:
    """Dimensions of the components with the generic/versal split.

    ``generic_flags`` is aligned with the partition's component order; every
    component must be covered and every dimension is at least 1.
    """
    if len(generic_flags) != len(partition):
        raise ValueError("one generic/versal choice per red-green component")
    dims = tuple(comp.dimension for comp in partition)
    if any(d < 1 for d in dims):
        raise AssertionError("red-green component of dimension < 1")
    return RankProfile(dims, tuple(bool(g) for g in generic_flags))


# ---------------------------------------------------------------------------
# Genericity
# ---------------------------------------------------------------------------

def _sign_patterns(component: RedGreenComponent, vertices: tuple[int, ...], signs: tuple[int, ...]):
    """All valid sign assignments of an admissible set, one per choice of
    flips of its shared-green-neighbor blocks (the canonical signs only fix
    each block up to a flip)."""
    blocks = shared_green_blocks(component, frozenset(vertices))
    base = dict(zip(vertices, signs))
    for mask in range(1 << len(blocks)):
        out = dict(base)
        for i, block in enumerate(blocks):
            if mask >> i & 1:
                for v in block:
                    out[v] = -out[v]
        yield out


def genericity_check(
    component: RedGreenComponent,
    alpha: Mapping[int, int],
    q: int,
) -> bool:
    """Whether the parameters are generic on this component over F_q.

    For every admissible set S (under every valid sign assignment), the
    alternating product of the alpha values must differ from (-1)**|S|.
    Vertices missing from ``alpha`` carry the trivial value 1.
    """
    values = {v: alpha.get(v, 1) % q for v in component.reds}
    if any(val == 0 for val in values.values()):
        raise ValueError("alpha values must be nonzero in F_q")
    for adm in admissible_sets(component):
        target = (q - 1) if len(adm) % 2 else 1
        target %= q
        for signed in _sign_patterns(component, adm.vertices, adm.signs):
            prod = 1
            for v, sg in signed.items():
                val = values[v]
                prod = prod * (val if sg > 0 else pow(val, q - 2, q)) % q
            if prod == target:
                return False
    return True


def formal_genericity(component: RedGreenComponent, covered: set[int]) -> bool:
    """Whether generic parameters exist formally (over a big enough field).

    With the trivial value 1 on covered red vertices, the alternating
    product over an admissible set is a monomial in the symbols of the
    uncovered members; members are distinct symbols with exponents +-1, so
    the monomial is non-constant exactly when the set meets the uncovered
    reds.
    """
    return all(
        any(v not in covered for v in adm.vertices)
        for adm in admissible_sets(component)
    )
