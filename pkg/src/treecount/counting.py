"""Exact point-count polynomials of the tree varieties.

The central recursion peels a red leaf (generic or versal case, depending
on the choice attached to its red-green component) or splits an orange
tree along a domino, memoized on the canonical key of the choice-decorated
forest.  Alongside it: closed forms for the linear, D- and E-shaped
families (checked by exact division), the independent-set formula for the
all-versal count, Euler characteristics, the divisibility/reciprocity
report, the orange/unimodal two-step chain that never touches the general
recursion, and the coincidence census.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coloring import (
    Color,
    Coloring,
    RedGreenPartition,
    SizeGuardError,
    canonical_coloring,
    dimension,
    red_green_components,
)
from .matchings import (
    INDEPENDENT_SET_MAX_VERTICES,
    count_maximum_independent_sets,
    independent_set_size_counts,
)
from .polynomials import ONE, Poly, Q
from .trees import Forest, Tree, canonical_key, emit_graph6, enumerate_free_trees, remove_vertices

CENSUS_MAX_VERTICES = 14


class PhiKind(enum.Enum):
    GENERIC = "generic"
    VERSAL = "versal"


class PhiError(ValueError):
    """A generic/versal specification that does not fit the tree."""


@dataclass(frozen=True)
class PhiAssignment:
    """One generic/versal choice per red-green component, in partition order."""

    kinds: tuple[PhiKind, ...]

    def __len__(self) -> int:
        return len(self.kinds)


def resolve_phi(
    partition: RedGreenPartition,
    spec: str | PhiKind | Mapping[int, str | PhiKind] | PhiAssignment | None,
) -> PhiAssignment:
    """Resolve a user-facing choice spec against the actual components.

    Accepts a uniform kind (string or :class:`PhiKind`), a mapping keyed by
    the smallest vertex of each component, an already-built assignment, or
    ``None`` for trees without components.
    """
    if isinstance(spec, PhiAssignment):
        if len(spec) != len(partition):
            raise PhiError("assignment length does not match the components")
        return spec
    if spec is None:
        if len(partition):
            raise PhiError("tree has red-green components, a phi choice is required")
        return PhiAssignment(())
    if isinstance(spec, (str, PhiKind)):
        kind = PhiKind(spec) if isinstance(spec, str) else spec
        return PhiAssignment(tuple(kind for _ in partition))
    by_min = {comp.min_vertex: i for i, comp in enumerate(partition)}
    kinds: list[PhiKind | None] = [None] * len(partition)
    for key, val in spec.items():
        if key not in by_min:
            raise PhiError(f"no red-green component is indexed by vertex {key}")
        kinds[by_min[key]] = PhiKind(val) if isinstance(val, str) else val
    if not len(partition) and spec:
        raise PhiError("orange tree admits only the empty phi specification")
    missing = [comp.min_vertex for comp, k in zip(partition, kinds) if k is None]
    if missing:
        raise PhiError(f"phi missing for components indexed by {missing}")
    return PhiAssignment(tuple(kinds))  # type: ignore[arg-type]


def phi_vertex_kinds(
    coloring: Coloring, partition: RedGreenPartition, phi: PhiAssignment
) -> tuple[PhiKind | None, ...]:
    """Per-vertex view of a component-level assignment (None on orange)."""
    if len(phi) != len(partition):
        raise PhiError("assignment length does not match the components")
    out: list[PhiKind | None] = [None] * len(coloring.colors)
    for comp, kind in zip(partition, phi.kinds):
        for v in comp.vertices:
            out[v] = kind
    return tuple(out)


def all_phi_assignments(partition: RedGreenPartition) -> list[PhiAssignment]:
    """Every generic/versal choice over the components of a partition."""
    out = [PhiAssignment(())]
    for _ in partition:
        out = [
            PhiAssignment(p.kinds + (k,))
            for p in out
            for k in (PhiKind.GENERIC, PhiKind.VERSAL)
        ]
    return out


# ---------------------------------------------------------------------------
# The general recursion
# ---------------------------------------------------------------------------

_KIND_LABEL = {None: 0, PhiKind.GENERIC: 1, PhiKind.VERSAL: 2}

#: Base counts for a single red vertex.
_SINGLE = {
    PhiKind.GENERIC: Q - 1,
    PhiKind.VERSAL: Q * Q - Q + 1,
}

VertexKinds = tuple  # tuple[PhiKind | None, ...]

_global_memo: dict[bytes, Poly] = {}


def clear_memo() -> None:
    _global_memo.clear()


def _induced_kinds(
    child: Tree, orig: Sequence[int], parent_kinds: VertexKinds
) -> VertexKinds:
    """Restrict a per-vertex choice to a subtree, recolored from scratch.

    Vertices that become orange lose their mark; red/green vertices keep the
    mark of the unique parent component containing them (removals only ever
    shrink the red/green set, so the inherited mark is always present).
    """
    child_coloring = canonical_coloring(child)
    out: list[PhiKind | None] = []
    for x in range(child.n):
        if child_coloring.colors[x] is Color.ORANGE:
            out.append(None)
        else:
            kind = parent_kinds[orig[x]]
            if kind is None:
                raise AssertionError("red/green vertex came from an orange one")
            out.append(kind)
    return tuple(out)


class CountEngine:
    """Memoized evaluator of the point-count recursion.

    A shared memo table is safe under concurrent use (values for a key are
    always identical); passing a private dict gives share-nothing workers.
    ``rng`` randomizes the red-leaf and domino choices, which must not
    change any result.
    """

    def __init__(
        self,
        memo: dict[bytes, Poly] | None = None,
        rng: random.Random | None = None,
    ) -> None:
        self.memo = _global_memo if memo is None else memo
        self.rng = rng

    def tree_poly(self, t: Tree, kinds: VertexKinds) -> Poly:
        key = canonical_key(t, [_KIND_LABEL[k] for k in kinds])
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        result = self._compute(t, kinds)
        self.memo[key] = result
        return result

    def forest_poly(self, f: Forest, parent_kinds: VertexKinds) -> Poly:
        out = ONE
        for comp, orig in f:
            out = out * self.tree_poly(comp, _induced_kinds(comp, orig, parent_kinds))
        return out

    def _choose(self, options: list, scores: list) -> object:
        if self.rng is not None:
            return options[self.rng.randrange(len(options))]
        return min(zip(scores, options))[1]

    def _compute(self, t: Tree, kinds: VertexKinds) -> Poly:
        if t.n == 1:
            if kinds[0] is None:
                raise PhiError("an isolated vertex is red and needs a choice")
            return _SINGLE[kinds[0]]
        coloring = canonical_coloring(t)
        for v in range(t.n):
            if (kinds[v] is None) != (coloring.colors[v] is Color.ORANGE):
                raise PhiError("vertex marks do not match the coloring")
        red_leaves = [
            v
            for v in range(t.n)
            if t.degree(v) == 1 and coloring.colors[v] is Color.RED
        ]
        if not red_leaves:
            result = self._orange_split(t, coloring, kinds)
        else:
            result = self._leaf_split(t, coloring, kinds, red_leaves)
        self._check_shape(t, coloring, kinds, result)
        return result

    def _leaf_split(
        self, t: Tree, coloring: Coloring, kinds: VertexKinds, red_leaves: list[int]
    ) -> Poly:
        """Peel a red leaf v with green neighbor u.

        Generic component: N = (q-1) N(T-v) + q N(T-u-v);
        versal component:  N = (q-1)^2 N(T-v) + q N(T-u-v).
        """
        scores = []
        for v in red_leaves:
            u = t.neighbors[v][0]
            pieces = remove_vertices(t, {u, v})
            scores.append(max((c.n for c in pieces.components), default=0))
        v = self._choose(red_leaves, scores)
        u = t.neighbors[v][0]
        minus_leaf = remove_vertices(t, {v})
        fringe = remove_vertices(t, {u, v})
        n_minus_leaf = self.forest_poly(minus_leaf, kinds)
        n_fringe = self.forest_poly(fringe, kinds)
        if kinds[v] is PhiKind.GENERIC:
            return (Q - 1) * n_minus_leaf + Q * n_fringe
        return (Q - 1) ** 2 * n_minus_leaf + Q * n_fringe


    def _orange_split(self, t: Tree, coloring: Coloring, kinds: VertexKinds) -> Poly:
        """Split an orange tree along a domino u-v.

        With T_u/T_v the orange trees hanging off u and off v, and S the
        forests obtained from them by also deleting the contact vertex:
        N = (q-1)^2 prod N(T_u) prod N(T_v)
            + q prod Nversal(S_u) prod N(T_v)
            + q prod N(T_u) prod Nversal(S_v).
        """
        dominoes = sorted(coloring.dominoes)
        scores = []
        for a, b in dominoes:
            pieces = remove_vertices(t, {a, b})
            scores.append(max((c.n for c in pieces.components), default=0))
        u, v = self._choose(dominoes, scores)
        pieces = remove_vertices(t, {u, v})
        orange_u, orange_v = ONE, ONE
        versal_u, versal_v = ONE, ONE
        for comp, orig in pieces:
            inherited = _induced_kinds(comp, orig, kinds)
            contact_side = None
            contact_local = None
            for x in range(comp.n):
                if u in t.neighbors[orig[x]]:
                    contact_side, contact_local = "u", x
                if v in t.neighbors[orig[x]]:
                    contact_side, contact_local = "v", x
            plain = self.tree_poly(comp, inherited)
            stripped = remove_vertices(comp, {contact_local})
            versal = ONE
            for sub, sub_orig in stripped:
                sub_kinds = tuple(
                    None if c is Color.ORANGE else PhiKind.VERSAL
                    for c in canonical_coloring(sub).colors
                )
                versal = versal * self.tree_poly(sub, sub_kinds)
            if contact_side == "u":
                orange_u = orange_u * plain
                versal_u = versal_u * versal
            else:
                orange_v = orange_v * plain
                versal_v = versal_v * versal
        return (
            (Q - 1) ** 2 * orange_u * orange_v
            + Q * versal_u * orange_v
            + Q * orange_u * versal_v
        )

    def _check_shape(
        self, t: Tree, coloring: Coloring, kinds: VertexKinds, result: Poly
    ) -> None:
        partition = red_green_components(t, coloring)
        versal_rank = sum(
            comp.dimension
            for comp in partition
            if kinds[comp.min_vertex] is PhiKind.VERSAL
        )
        if not result.is_monic or result.degree != t.n + versal_rank:
            raise AssertionError(
                f"count polynomial has wrong shape: {result} for n={t.n}, "
                f"versal rank {versal_rank}"
            )


def count_polynomial(
    obj: Tree | Forest,
    phi: str | PhiKind | Mapping[int, str | PhiKind] | PhiAssignment | None = None,
    memo: dict[bytes, Poly] | None = None,
    rng: random.Random | None = None,
) -> Poly:
    """Exact number of points N as a polynomial in the field size.

    ``phi`` picks generic or versal per red-green component (uniform string,
    mapping keyed by smallest component vertex, or a resolved assignment).
    Orange inputs need no choice.  Forests take uniform specs and multiply
    over components.
    """
    engine = CountEngine(memo=memo, rng=rng)
    if isinstance(obj, Forest):
        if not (phi is None or isinstance(phi, (str, PhiKind))):
            raise PhiError("forests take a uniform phi specification")
        out = ONE
        for comp, _ in obj:
            out = out * count_polynomial(comp, phi, memo=engine.memo, rng=rng)
        return out
    coloring = canonical_coloring(obj)
    partition = red_green_components(obj, coloring)
    if isinstance(phi, (str, PhiKind)) and len(partition) == 0:
        phi = None
    assignment = resolve_phi(partition, phi)
    kinds = phi_vertex_kinds(coloring, partition, assignment)
    return engine.tree_poly(obj, kinds)


# ---------------------------------------------------------------------------
# Closed forms, checked by exact division
# ---------------------------------------------------------------------------

class Mode(enum.Enum):
    ORANGE = "orange"
    GENERIC = "generic"
    VERSAL = "versal"


class InconsistentModeError(ValueError):
    """Mode does not exist for that family member (wrong parity)."""


def _qp(k: int) -> Poly:
    return Poly.q_power(k)


def closed_form_a(n: int, mode: Mode) -> Poly:
    """Counts for the linear tree on n vertices."""
    if n < 1:
        raise ValueError("n >= 1")
    if n % 2 == 0:
        if mode is not Mode.ORANGE:
            raise InconsistentModeError("even linear trees are orange")
        return (_qp(n + 2) - 1).divexact(Q * Q - 1)
    if mode is Mode.VERSAL:
        return (_qp(n + 2) + 1).divexact(Q + 1)
    if mode is Mode.GENERIC:
        num = (_qp((n + 1) // 2) - 1) * (_qp((n + 3) // 2) - 1)
        return num.divexact(Q * Q - 1)
    raise InconsistentModeError("odd linear trees are unimodal, not orange")


def closed_form_d(n: int, mode: Mode) -> Poly:
    """Counts for the D-shaped tree on n vertices (n >= 4)."""
    if n < 4:
        raise ValueError("D-family needs n >= 4")
    if mode is Mode.ORANGE:
        raise InconsistentModeError("D-shaped trees are never orange")
    if n % 2 == 0:
        if mode is Mode.VERSAL:
            num = _qp(n + 3) - _qp(n + 2) + _qp(n) + _qp(3) - Q + 1
            return num.divexact(Q + 1)
        return (_qp(n // 2) - 1) ** 2
    if mode is Mode.VERSAL:
        num = _qp(n + 3) - _qp(n + 2) + _qp(n) - _qp(3) + Q - 1
        return num.divexact(Q * Q - 1)
    return _qp(n) - 1


def closed_form_e(n: int, mode: Mode) -> Poly:
    """Counts for the E-shaped tree on n vertices (n >= 5)."""
    if n < 5:
        raise ValueError("E-family needs n >= 5")
    if n % 2 == 0:
        if mode is not Mode.ORANGE:
            raise InconsistentModeError("even E-shaped trees are orange")
        return ((Q * Q - Q + 1) * (_qp(n - 1) - 1)).divexact(Q - 1)
    if mode is Mode.VERSAL:
        return (Q * Q - Q + 1) * (_qp(n - 1) + 1)
    if mode is Mode.GENERIC:
        num = (
            _qp(n + 1)
            - _qp(n)
            + _qp(n - 1)
            - _qp((n + 3) // 2)
            - _qp((n - 1) // 2)
            + Q * Q
            - Q
            + 1
        )
        return num.divexact(Q - 1)
    raise InconsistentModeError("odd E-shaped trees are unimodal, not orange")


# ---------------------------------------------------------------------------
# Independent-set formula, Euler characteristic, reciprocity
# ---------------------------------------------------------------------------

def versal_by_independent_sets(t: Tree) -> Poly:
    """All-versal count as a sum over independent sets S:
    (q-1)**(n + dim - 2|S|) * q**|S|."""
    if t.n > INDEPENDENT_SET_MAX_VERTICES:
        raise SizeGuardError(
            f"independent-set formula guarded at n <= {INDEPENDENT_SET_MAX_VERTICES}"
        )
    d = dimension(t)
    out = Poly()
    for size, count in enumerate(independent_set_size_counts(t)):
        if count:
            out = out + count * (Q - 1) ** (t.n + d - 2 * size) * Q**size
    return out


def euler_characteristic(t: Tree) -> int:
    """Value of the all-versal count at q = 1; checked against vc(T)."""
    value = count_polynomial(t, PhiKind.VERSAL)(1)
    vc = count_maximum_independent_sets(t)
    if value != vc:
        raise AssertionError(
            f"Euler characteristic {value} != maximum-independent-set count {vc}"
        )
    return value


@dataclass(frozen=True)
class ReciprocityReport:
    divisible: bool
    reciprocal: bool
    quotient: Poly | None


def reciprocity_report(p: Poly, rank: int) -> ReciprocityReport:
    """Divide out (q-1)**rank exactly and test the quotient for reciprocity."""
    try:
        quotient = p.divexact((Q - 1) ** rank)
    except ArithmeticError:
        return ReciprocityReport(False, False, None)
    return ReciprocityReport(True, quotient.is_reciprocal(), quotient)


# ---------------------------------------------------------------------------
# The orange/unimodal chain
# ---------------------------------------------------------------------------

def _is_path(t: Tree) -> bool:
    return all(t.degree(v) <= 2 for v in range(t.n))


def branch_length(t: Tree, leaf: int) -> int:
    """Number of valency-2 vertices walked from the leaf's neighbor."""
    if t.degree(leaf) != 1:
        raise ValueError(f"vertex {leaf} is not a leaf")
    prev, cur = leaf, t.neighbors[leaf][0]
    length = 0
    while t.degree(cur) == 2:
        length += 1
        prev, cur = cur, next(x for x in t.neighbors[cur] if x != prev)
    return length


class ChainEngine:
    """The two-step scheme for orange trees and versal unimodal trees.

    Orange: peel the leaf with the shortest branch, N = Nversal(T - leaf)
    + q * N(T - domino).  Unimodal: extend the red leaf with the longest
    branch into an orange tree and run the same identity backwards.  Even
    paths seed the chain through their closed form; the general recursion
    is never consulted.
    """

    def __init__(self, memo: dict[bytes, Poly] | None = None) -> None:
        self.memo = {} if memo is None else memo

    def orange(self, t: Tree) -> Poly:
        key = b"N" + canonical_key(t)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if _is_path(t):
            if t.n % 2:
                raise AssertionError("odd path reached the orange chain")
            result = closed_form_a(t.n, Mode.ORANGE)
        else:
            leaves = [v for v in range(t.n) if t.degree(v) == 1]
            v = min(leaves, key=lambda x: (branch_length(t, x), x))
            u = t.neighbors[v][0]
            minus_leaf = remove_vertices(t, {v})
            rest = ONE
            for comp, _ in remove_vertices(t, {u, v}):
                rest = rest * self.orange(comp)
            result = self.versal_unimodal(minus_leaf.components[0]) + Q * rest
        self.memo[key] = result
        return result

    def versal_unimodal(self, t: Tree) -> Poly:
        key = b"V" + canonical_key(t)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        coloring = canonical_coloring(t)
        red_leaves = [
            v
            for v in range(t.n)
            if t.degree(v) == 1 or t.n == 1
            if coloring.colors[v] is Color.RED
        ]
        w = max(red_leaves, key=lambda x: (branch_length(t, x) if t.n > 1 else 0, -x))
        extended = Tree(t.n + 1, t.edges + ((w, t.n),))
        if t.n == 1:
            shrunk = ONE
        else:
            shrunk = ONE
            for comp, _ in remove_vertices(t, {w}):
                shrunk = shrunk * self.orange(comp)
        result = self.orange(extended) - Q * shrunk
        self.memo[key] = result
        return result


def orange_unimodal_chain(t: Tree, memo: dict[bytes, Poly] | None = None) -> Poly:
    """N for an orange tree, or the all-versal N for a unimodal tree,
    computed purely by the chain scheme."""
    d = dimension(t)
    engine = ChainEngine(memo)
    if d == 0:
        return engine.orange(t)
    if d == 1:
        return engine.versal_unimodal(t)
    raise ValueError("chain scheme applies to orange or unimodal trees only")


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------

class CensusClass(enum.Enum):
    ORANGE = "orange"
    UNIMODAL_VERSAL = "unimodal-versal"
    UNIMODAL_GENERIC = "unimodal-generic"


@dataclass(frozen=True)
class CensusReport:
    n: int
    census_class: CensusClass
    tree_count: int
    distinct_polynomial_count: int
    collisions: tuple[tuple[str, ...], ...]
    polynomials: tuple[Poly, ...]


def census(
    n: int,
    census_class: CensusClass,
    memo: dict[bytes, Poly] | None = None,
    threads: int = 1,
) -> CensusReport:
    """Bucket the n-vertex trees of a class by their polynomial.

    Orange means dimension 0 (the polynomial needs no choice); unimodal
    means dimension 1 with the stated uniform choice on the single
    component.  Collisions list the graph6 strings of trees sharing one
    polynomial.
    """
    if n > CENSUS_MAX_VERTICES:
        raise SizeGuardError(f"census guarded at n <= {CENSUS_MAX_VERTICES}")
    target = 0 if census_class is CensusClass.ORANGE else 1
    phi = (
        None
        if census_class is CensusClass.ORANGE
        else PhiKind.VERSAL
        if census_class is CensusClass.UNIMODAL_VERSAL
        else PhiKind.GENERIC
    )
    selected = [t for t in enumerate_free_trees(n) if dimension(t) == target]
    engine_memo = _global_memo if memo is None else memo

    def job(t: Tree) -> tuple[str, Poly]:
        return emit_graph6(t), count_polynomial(t, phi, memo=engine_memo)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, selected))
    else:
        results = [job(t) for t in selected]
    buckets: dict[Poly, list[str]] = {}
    for g6, poly in results:
        buckets.setdefault(poly, []).append(g6)
    ordered = sorted(buckets.items(), key=lambda kv: kv[0].coeffs)
    collisions = tuple(tuple(g6s) for _, g6s in ordered if len(g6s) > 1)
    return CensusReport(
        n=n,
        census_class=census_class,
        tree_count=len(selected),
        distinct_polynomial_count=len(buckets),
        collisions=collisions,
        polynomials=tuple(p for p, _ in ordered),
    )
