"""Matchings, independent sets, vertex covers and admissible sets.

The combinatorial substrate under the variety constructions: greedy maximum
matchings on trees and forests (including matchings forced to avoid a red
vertex or to contain a red-green edge), exact counting of maximum
independent sets, enumeration of all independent sets, and the admissible
sets of red vertices that carry the genericity condition, with their
canonical sign assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .coloring import (
    Color,
    Coloring,
    RedGreenComponent,
    SizeGuardError,
    canonical_coloring,
)
from .trees import Forest, Tree, remove_vertices

Edge = tuple[int, int]

INDEPENDENT_SET_MAX_VERTICES = 24


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _postorder(t: Tree, root: int = 0) -> tuple[list[int], list[int]]:
    """Vertices in post-order plus the parent array of the rooting."""
    parent = [-1] * t.n
    order = []
    stack = [root]
    seen = [False] * t.n
    seen[root] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in t.neighbors[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    order.reverse()
    return order, parent


def maximum_matching(t: Tree | Forest) -> frozenset[Edge]:
    """One maximum matching, by greedy leaf elimination up the tree."""
    if isinstance(t, Forest):
        out: set[Edge] = set()
        for comp, orig in t:
            for u, v in maximum_matching(comp):
                out.add(_norm(orig[u], orig[v]))
        return frozenset(out)
    order, parent = _postorder(t)
    matched = [False] * t.n
    chosen: set[Edge] = set()
    for v in order:
        p = parent[v]
        if p >= 0 and not matched[v] and not matched[p]:
            matched[v] = matched[p] = True
            chosen.add(_norm(v, p))
    return frozenset(chosen)


def maximum_matching_size(t: Tree | Forest) -> int:
    return len(maximum_matching(t))


def uncovered_vertices(t: Tree, m: frozenset[Edge]) -> list[int]:
    covered = {x for e in m for x in e}
    return [v for v in range(t.n) if v not in covered]


def maximum_matching_avoiding(
    t: Tree, v: int, coloring: Coloring | None = None
) -> frozenset[Edge]:
    """A maximum matching of ``t`` leaving the red vertex ``v`` uncovered."""
    c = coloring or canonical_coloring(t)
    if c.colors[v] is not Color.RED:
        raise ValueError(f"vertex {v} is not red")
    rest = maximum_matching(remove_vertices(t, {v}))
    if len(rest) != maximum_matching_size(t):
        raise AssertionError("matching of T minus a red vertex is not maximum")
    return rest


def maximum_matching_containing(
    t: Tree, e: Edge, coloring: Coloring | None = None
) -> frozenset[Edge]:
    """A maximum matching of ``t`` containing the red-green edge ``e``."""
    u, v = e
    if not t.has_edge(u, v):
        raise ValueError(f"{e} is not an edge")
    c = coloring or canonical_coloring(t)
    if {c.colors[u], c.colors[v]} != {Color.RED, Color.GREEN}:
        raise ValueError(f"edge {e} is not red-green")
    rest = set(maximum_matching(remove_vertices(t, {u, v})))
    rest.add(_norm(u, v))
    if len(rest) != maximum_matching_size(t):
        raise AssertionError("completed matching through a red-green edge not maximum")
    return frozenset(rest)


# ---------------------------------------------------------------------------
# Independent sets
# ---------------------------------------------------------------------------

def independent_sets(t: Tree) -> Iterator[frozenset[int]]:
    """Every independent set (the empty one included), in the deterministic
    order of the natural vertex-by-vertex backtracking."""
    if t.n > INDEPENDENT_SET_MAX_VERTICES:
        raise SizeGuardError(
            f"independent-set enumeration guarded at n <= {INDEPENDENT_SET_MAX_VERTICES}"
        )
    acc: list[int] = []

    def extend(v: int) -> Iterator[frozenset[int]]:
        if v == t.n:
            yield frozenset(acc)
            return
        yield from extend(v + 1)
        if all(w not in t.neighbors[v] for w in acc):
            acc.append(v)
            yield from extend(v + 1)
            acc.pop()

    yield from extend(0)


def _independent_dp(t: Tree) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Per-vertex (max size, count) pairs for 'v excluded' / 'v included'."""
    order, parent = _postorder(t)
    out: list[tuple[int, int]] = [(0, 1)] * t.n
    inn: list[tuple[int, int]] = [(1, 1)] * t.n
    for v in order:
        children = [w for w in t.neighbors[v] if parent[w] == v]
        size_out, cnt_out = 0, 1
        size_in, cnt_in = 1, 1
        for w in children:
            best = max(out[w][0], inn[w][0])
            cnt = (out[w][1] if out[w][0] == best else 0) + (
                inn[w][1] if inn[w][0] == best else 0
            )
            size_out += best
            cnt_out *= cnt
            size_in += out[w][0]
            cnt_in *= out[w][1]
        out[v] = (size_out, cnt_out)
        inn[v] = (size_in, cnt_in)
    return out, inn


def count_maximum_independent_sets(t: Tree) -> int:
    """vc(T): the number of maximum independent sets (= minimum vertex covers)."""
    out, inn = _independent_dp(t)
    best = max(out[0][0], inn[0][0])
    return (out[0][1] if out[0][0] == best else 0) + (
        inn[0][1] if inn[0][0] == best else 0
    )


def independent_set_size_counts(t: Tree) -> list[int]:
    """``counts[s]`` = number of independent sets of size ``s``."""
    order, parent = _postorder(t)
    out: list[list[int]] = [[1] for _ in range(t.n)]
    inn: list[list[int]] = [[0, 1] for _ in range(t.n)]

    def mul(a: list[int], b: list[int]) -> list[int]:
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return res

    for v in order:
        children = [w for w in t.neighbors[v] if parent[w] == v]
        for w in children:
            both = [x + y for x, y in zip(out[w] + [0] * len(inn[w]), inn[w] + [0] * len(out[w]))]
            while both and both[-1] == 0:
                both.pop()
            out[v] = mul(out[v], both)
            inn[v] = mul(inn[v], out[w])
    total = [
        x + y
        for x, y in zip(out[0] + [0] * len(inn[0]), inn[0] + [0] * len(out[0]))
    ]
    while total and total[-1] == 0:
        total.pop()
    return total


# ---------------------------------------------------------------------------
# Admissible sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSet:
    """Nonempty red set where every green of the component sees 0 or 2 of it,
    signed so that reds sharing a green neighbor get opposite signs."""

    vertices: tuple[int, ...]
    signs: tuple[int, ...]

    def sign(self, v: int) -> int:
        return self.signs[self.vertices.index(v)]

    def __len__(self) -> int:
        return len(self.vertices)


def _green_adjacency(component: RedGreenComponent) -> dict[int, tuple[int, ...]]:
    adj: dict[int, list[int]] = {g: [] for g in component.greens}
    for u, v in component.edges:
        if u in adj:
            adj[u].append(v)
        if v in adj:
            adj[v].append(u)
    return {g: tuple(sorted(ns)) for g, ns in adj.items()}


def is_admissible(component: RedGreenComponent, s: frozenset[int]) -> bool:
    if not s or not s <= set(component.reds):
        return False
    for ns in _green_adjacency(component).values():
        k = sum(1 for x in ns if x in s)
        if k not in (0, 2):
            return False
    return True


def shared_green_blocks(
    component: RedGreenComponent, s: frozenset[int]
) -> list[list[int]]:
    """Connected blocks of ``s`` under 'shares a green neighbor', each listed
    in BFS order from its smallest member."""
    adj: dict[int, set[int]] = {v: set() for v in s}
    for ns in _green_adjacency(component).values():
        inside = [x for x in ns if x in s]
        for a in inside:
            for b in inside:
                if a != b:
                    adj[a].add(b)
    blocks = []
    seen: set[int] = set()
    for start in sorted(s):
        if start in seen:
            continue
        block = [start]
        seen.add(start)
        i = 0
        while i < len(block):
            for y in sorted(adj[block[i]]):
                if y not in seen:
                    seen.add(y)
                    block.append(y)
            i += 1
        blocks.append(block)
    return blocks


def _canonical_signs(component: RedGreenComponent, s: frozenset[int]) -> dict[int, int]:
    """Two-color each shared-a-green-neighbor block, smallest member +1.

    The auxiliary graph restricted to an admissible set of a tree component
    is a forest, so the BFS never meets a parity conflict; a conflict would
    mean an odd cycle in the tree.
    """
    adj: dict[int, set[int]] = {v: set() for v in s}
    for ns in _green_adjacency(component).values():
        inside = [x for x in ns if x in s]
        for a in inside:
            for b in inside:
                if a != b:
                    adj[a].add(b)
    sign: dict[int, int] = {}
    for block in shared_green_blocks(component, s):
        sign[block[0]] = 1
        for v in block[1:]:
            fixed = next(w for w in sorted(adj[v]) if w in sign)
            sign[v] = -sign[fixed]
        for v in block:
            for w in adj[v]:
                if sign[w] != -sign[v]:
                    raise AssertionError("sign parity conflict in admissible set")
    return sign


def admissible_sets(component: RedGreenComponent) -> Iterator[AdmissibleSet]:
    """Every admissible set of the component with its canonical signs.

    Emitted in lexicographic order of the underlying red subsets; the global
    flip of any block is not emitted separately (the genericity predicate is
    flip-invariant).
    """
    reds = sorted(component.reds)
    greens = _green_adjacency(component)
    for mask in range(1, 1 << len(reds)):
        s = frozenset(reds[i] for i in range(len(reds)) if mask >> i & 1)
        ok = True
        for ns in greens.values():
            k = sum(1 for x in ns if x in s)
            if k not in (0, 2):
                ok = False
                break
        if not ok:
            continue
        sign = _canonical_signs(component, s)
        vertices = tuple(sorted(s))
        yield AdmissibleSet(vertices, tuple(sign[v] for v in vertices))


def grow_admissible(component: RedGreenComponent, u: int) -> AdmissibleSet:
    """An admissible set containing ``u``, by repeated completion: while some
    green sees exactly one member, adopt its smallest other red neighbor."""
    if u not in component.reds:
        raise ValueError(f"vertex {u} is not a red vertex of the component")
    greens = _green_adjacency(component)
    s = {u}
    while True:
        grown = False
        for g in sorted(greens):
            inside = [x for x in greens[g] if x in s]
            if len(inside) == 1:
                extra = next(x for x in greens[g] if x not in s)
                s.add(extra)
                grown = True
                break
        if not grown:
            break
    if not is_admissible(component, frozenset(s)):
        raise AssertionError("completion loop ended on a non-admissible set")
    sign = _canonical_signs(component, frozenset(s))
    vertices = tuple(sorted(s))
    return AdmissibleSet(vertices, tuple(sign[v] for v in vertices))
