"""The canonical red-orange-green coloring of trees and its invariants.

Three independent routes to the same coloring live here: the linear-time
fixpoint algorithm (the production path), a minimum-vertex-cover oracle and
a maximum-matching oracle (both exponential, both self-contained so they
share no code with what they check).  On top of the coloring sit the
red-green components and the dimension invariant r(T) - g(T), which also
equals the adjacency-matrix nullity and the number of vertices missed by
any maximum matching.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .trees import Forest, Tree, remove_vertices


class Color(enum.Enum):
    RED = "red"
    ORANGE = "orange"
    GREEN = "green"


class SizeGuardError(ValueError):
    """An exponential oracle was asked for more than it is guarded to do."""


ORACLE_MAX_VERTICES = 20

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Coloring:
    """Per-vertex colors plus the forced orange dominoes."""

    colors: tuple[Color, ...]
    dominoes: frozenset[Edge]

    def vertices_of(self, color: Color) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c is color]

    @property
    def red_count(self) -> int:
        return sum(1 for c in self.colors if c is Color.RED)

    @property
    def green_count(self) -> int:
        return sum(1 for c in self.colors if c is Color.GREEN)


def canonical_coloring(t: Tree, rng: random.Random | None = None) -> Coloring:
    """Compute the canonical coloring by the recoloring fixpoint.

    All vertices start red.  Whenever some vertex has exactly one red
    neighbor, that neighbor turns green; if the witness is itself green at
    that moment, the witness-neighbor edge becomes a domino.  Once stable,
    green vertices without a red neighbor become orange.  The result does
    not depend on the processing order; ``rng`` shuffles the work queue to
    let tests exercise exactly that.
    """
    colors = [Color.RED] * t.n
    red_nbrs = [t.degree(v) for v in range(t.n)]
    dominoes: set[Edge] = set()
    queue = list(range(t.n))
    in_queue = [True] * t.n
    while queue:
        if rng is None:
            v = queue.pop()
        else:
            v = queue.pop(rng.randrange(len(queue)))
        in_queue[v] = False
        if red_nbrs[v] != 1:
            continue
        w = next(x for x in t.neighbors[v] if colors[x] is Color.RED)
        colors[w] = Color.GREEN
        if colors[v] is Color.GREEN:
            dominoes.add(_norm(v, w))
        for x in t.neighbors[w]:
            red_nbrs[x] -= 1
            if not in_queue[x]:
                queue.append(x)
                in_queue[x] = True
    for v in range(t.n):
        if colors[v] is Color.GREEN and red_nbrs[v] == 0:
            colors[v] = Color.ORANGE
    return Coloring(tuple(colors), frozenset(dominoes))


def check_local_description(t: Tree, c: Coloring) -> None:
    """Assert the local characterization: orange dominoes perfectly match the
    orange forest, greens have >= 2 red neighbors, reds have only green ones."""
    matched: set[int] = set()
    for u, v in c.dominoes:
        if c.colors[u] is not Color.ORANGE or c.colors[v] is not Color.ORANGE:
            raise AssertionError("domino endpoint is not orange")
        if u in matched or v in matched:
            raise AssertionError("dominoes overlap")
        matched.update((u, v))
    for v in range(t.n):
        col = c.colors[v]
        nbr_cols = [c.colors[w] for w in t.neighbors[v]]
        if col is Color.ORANGE and v not in matched:
            raise AssertionError("orange vertex not covered by a domino")
        if col is Color.GREEN and nbr_cols.count(Color.RED) < 2:
            raise AssertionError("green vertex with fewer than two red neighbors")
        if col is Color.RED and any(x is not Color.GREEN for x in nbr_cols):
            raise AssertionError("red vertex with a non-green neighbor")


# ---------------------------------------------------------------------------
# Exponential oracles.  Deliberately self-contained brute force.
# ---------------------------------------------------------------------------

def _guard(t: Tree) -> None:
    if t.n > ORACLE_MAX_VERTICES:
        raise SizeGuardError(
            f"oracle guarded at n <= {ORACLE_MAX_VERTICES}, got n = {t.n}"
        )


def minimum_vertex_covers(t: Tree) -> list[frozenset[int]]:
    """Every minimum vertex cover, by exhaustive search over subset sizes."""
    _guard(t)
    for size in range(t.n + 1):
        found = [
            frozenset(s)
            for s in itertools.combinations(range(t.n), size)
            if all(u in s or v in s for u, v in t.edges)
        ]
        if found:
            return found
    raise AssertionError("unreachable: the full vertex set is a cover")


def coloring_by_vertex_covers(t: Tree) -> tuple[Color, ...]:
    """Colors from minimum-vertex-cover membership: green in all, orange in
    some, red in none."""
    covers = minimum_vertex_covers(t)
    in_all = frozenset.intersection(*covers)
    in_some = frozenset.union(*covers)
    return tuple(
        Color.GREEN if v in in_all else Color.ORANGE if v in in_some else Color.RED
        for v in range(t.n)
    )


def _all_matchings_of_size(t: Tree, size: int) -> list[frozenset[Edge]]:
    edges = list(t.edges)
    out: list[frozenset[Edge]] = []

    def extend(idx: int, used: set[int], acc: list[Edge]) -> None:
        if len(acc) == size:
            out.append(frozenset(acc))
            return
        if size - len(acc) > len(edges) - idx:
            return
        for j in range(idx, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                used.update((u, v))
                acc.append(edges[j])
                extend(j + 1, used, acc)
                acc.pop()
                used.difference_update((u, v))

    extend(0, set(), [])
    return out


def all_maximum_matchings(t: Tree) -> list[frozenset[Edge]]:
    """Every maximum matching, by backtracking over the edge list."""
    _guard(t)
    for size in range(t.n // 2, -1, -1):
        found = _all_matchings_of_size(t, size)
        if found:
            return found
    raise AssertionError("unreachable: the empty matching always exists")


def coloring_by_matchings(t: Tree) -> Coloring:
    """Colors and dominoes from the behaviour of vertices across all maximum
    matchings: always covered by one fixed domino (orange), always covered
    but variously (green), sometimes uncovered (red)."""
    matchings = all_maximum_matchings(t)
    colors = []
    dominoes: set[Edge] = set()
    for v in range(t.n):
        owning = set()
        for m in matchings:
            dom = next((e for e in m if v in e), None)
            owning.add(dom)
        if None in owning:
            colors.append(Color.RED)
        elif len(owning) == 1:
            colors.append(Color.ORANGE)
            dominoes.add(next(iter(owning)))
        else:
            colors.append(Color.GREEN)
    return Coloring(tuple(colors), frozenset(dominoes))


# ---------------------------------------------------------------------------
# Red-green components and dimension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RedGreenComponent:
    """One connected component of the subgraph of red-green edges."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    reds: tuple[int, ...]
    greens: tuple[int, ...]

    @property
    def min_vertex(self) -> int:
        return self.vertices[0]

    @property
    def dimension(self) -> int:
        return len(self.reds) - len(self.greens)


@dataclass(frozen=True)
class RedGreenPartition:
    components: tuple[RedGreenComponent, ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def component_of(self, v: int) -> int:
        """Index of the component containing vertex ``v`` (-1 when orange)."""
        for i, comp in enumerate(self.components):
            if v in comp.vertices:
                return i
        return -1


def red_green_components(t: Tree, c: Coloring) -> RedGreenPartition:
    """Connected components of the graph kept from red-green edges only.

    Orange vertices belong to no component.  A 1-vertex tree is a single
    all-red component.  Each component is checked to be bipartite with only
    red leaves.
    """
    rg_edges = [
        e
        for e in t.edges
        if {c.colors[e[0]], c.colors[e[1]]} == {Color.RED, Color.GREEN}
    ]
    adj: dict[int, list[int]] = {}
    for u, v in rg_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    members = sorted(adj)
    if t.n == 1:
        members = [0]
    seen: set[int] = set()
    comps: list[RedGreenComponent] = []
    for start in members:
        if start in seen:
            continue
        stack, block = [start], {start}
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    block.add(y)
                    stack.append(y)
        vertices = tuple(sorted(block))
        edges = tuple(e for e in rg_edges if e[0] in block)
        reds = tuple(v for v in vertices if c.colors[v] is Color.RED)
        greens = tuple(v for v in vertices if c.colors[v] is Color.GREEN)
        if len(reds) + len(greens) != len(vertices):
            raise AssertionError("orange vertex inside a red-green component")
        for g in greens:
            if sum(1 for x in adj[g] if x in block) < 2:
                raise AssertionError("green leaf in a red-green component")
        comps.append(RedGreenComponent(vertices, edges, reds, greens))
    # every red or green vertex of a multi-vertex tree meets a red-green edge
    colored = sum(len(comp.vertices) for comp in comps)
    expected = sum(1 for col in c.colors if col is not Color.ORANGE)
    if colored != expected:
        raise AssertionError("red/green vertex missing from all components")
    return RedGreenPartition(tuple(comps))


def dimension(t: Tree) -> int:
    """The invariant r(T) - g(T) of the canonical coloring."""
    c = canonical_coloring(t)
    return c.red_count - c.green_count


def forest_dimension(f: Forest) -> int:
    return sum(dimension(comp) for comp in f.components)


def adjacency_nullity(t: Tree) -> int:
    """Kernel dimension of the adjacency matrix, by exact elimination."""
    n = t.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for u, v in t.edges:
        m[u][v] = m[v][u] = Fraction(1)
    rank = 0
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(n):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
    return n - rank


class TreeKind(enum.Enum):
    ORANGE = "orange"
    UNIMODAL = "unimodal"
    OTHER = "other"


@dataclass(frozen=True)
class TreeClass:
    dimension: int
    kind: TreeKind


def tree_class(t: Tree) -> TreeClass:
    """Dimension plus the orange/unimodal/other trichotomy."""
    d = dimension(t)
    if d == 0:
        kind = TreeKind.ORANGE
    elif d == 1:
        kind = TreeKind.UNIMODAL
    else:
        kind = TreeKind.OTHER
    return TreeClass(d, kind)
