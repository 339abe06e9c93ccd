"""Trees, forests, graph6 I/O, canonical forms and exhaustive generation.

Everything downstream works on the :class:`Tree` type defined here: a
connected acyclic graph on vertices ``0..n-1``.  The module also provides
the short-form graph6 codec (n <= 62), an AHU-style canonical key for
labelled trees (used both for isomorphism tests and as a memoization key),
vertex removal into :class:`Forest`, and a generator of free trees up to
isomorphism at desk scale.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

MAX_GRAPH6_VERTICES = 62
MAX_ENUMERATION_VERTICES = 16


class Graph6Error(ValueError):
    """Malformed or unsupported graph6 input."""


class NotATreeError(ValueError):
    """Input graph is not connected and acyclic."""


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    """Immutable tree on vertices ``0..n-1``.

    Construction validates connectivity and acyclicity; adjacency lists are
    precomputed and safe to share across threads.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a tree has at least one vertex")
        edges = tuple(sorted(_normalize_edge(u, v) for u, v in self.edges))
        if len(edges) != self.n - 1:
            raise NotATreeError(f"{len(edges)} edges for {self.n} vertices")
        if len(set(edges)) != len(edges):
            raise NotATreeError("duplicate edge")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in edges:
            if u == v:
                raise NotATreeError("self-loop")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError("vertex label out of range")
            adj[u].append(v)
            adj[v].append(u)
        # n-1 edges + reachability of every vertex from 0 == tree
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        if count != self.n:
            raise NotATreeError("graph is not connected")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(a)) for a in adj))

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.degree(v) <= 1]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]


@dataclass(frozen=True)
class Forest:
    """Disjoint union of trees with maps back to the original labels.

    ``orig[i][x]`` is the label, in the graph the forest was cut from, of
    local vertex ``x`` of component ``i``.  Component vertex sets partition
    the set of surviving original labels.
    """

    components: tuple[Tree, ...]
    orig: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.components) != len(self.orig):
            raise ValueError("one label map per component")
        labels = [x for m in self.orig for x in m]
        if len(labels) != len(set(labels)):
            raise ValueError("label maps overlap")

    @property
    def n(self) -> int:
        return sum(t.n for t in self.components)

    def __iter__(self) -> Iterator[tuple[Tree, tuple[int, ...]]]:
        return iter(zip(self.components, self.orig))


def single_vertex() -> Tree:
    return Tree(1, ())


def remove_vertices(t: Tree, drop: Iterable[int]) -> Forest:
    """Induced forest on the complement of ``drop``, with label maps back."""
    dropped = set(drop)
    if not dropped <= set(range(t.n)):
        raise ValueError("vertex to remove is not in the tree")
    keep = [v for v in range(t.n) if v not in dropped]
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for start in keep:
        if start in comp_of:
            continue
        idx = len(comps)
        members = [start]
        comp_of[start] = idx
        stack = [start]
        while stack:
            x = stack.pop()
            for y in t.neighbors[x]:
                if y not in dropped and y not in comp_of:
                    comp_of[y] = idx
                    members.append(y)
                    stack.append(y)
        comps.append(sorted(members))
    trees = []
    for members in comps:
        local = {x: i for i, x in enumerate(members)}
        edges = tuple(
            (local[u], local[v]) for u, v in t.edges if u in local and v in local
        )
        trees.append(Tree(len(members), edges))
    return Forest(tuple(trees), tuple(tuple(m) for m in comps))


def relabel(t: Tree, perm: Sequence[int]) -> Tree:
    """Apply the permutation ``perm`` (old label -> new label) to a tree."""
    if sorted(perm) != list(range(t.n)):
        raise ValueError("not a permutation of the vertex set")
    return Tree(t.n, tuple((perm[u], perm[v]) for u, v in t.edges))


# ---------------------------------------------------------------------------
# graph6 codec (short form, n <= 62)
# ---------------------------------------------------------------------------

def read_graph6(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Decode a short-form graph6 record into ``(n, edges)`` for any graph."""
    s = text.strip()
    if not s:
        raise Graph6Error("empty graph6 string")
    if not all(63 <= ord(ch) <= 126 for ch in s):
        raise Graph6Error("graph6 character out of range")
    head = ord(s[0]) - 63
    if head == 63:
        raise Graph6Error("long-form graph6 headers (n > 62) are not supported")
    n = head
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} payload characters for n={n}, got {len(body)}"
        )
    bits: list[int] = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return n, edges


def parse_graph6(text: str) -> Tree:
    """Decode a graph6 record that must encode a tree."""
    n, edges = read_graph6(text)
    try:
        return Tree(n, tuple(edges))
    except NotATreeError as exc:
        raise NotATreeError(f"graph6 {text.strip()!r} is not a tree: {exc}") from exc


def emit_graph6(t: Tree) -> str:
    """Standard short-form graph6 encoding (bit-exact, upper triangle by columns)."""
    if t.n > MAX_GRAPH6_VERTICES:
        raise Graph6Error("graph6 short form only supports n <= 62")
    adj = set(t.edges)
    bits = []
    for v in range(1, t.n):
        for u in range(v):
            bits.append(1 if (u, v) in adj else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(t.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_edge_list(text: str, indexing: str = "auto") -> Tree:
    """Parse a ``u v`` per-line edge list.

    ``indexing`` is one of ``auto``, ``0``, ``1``.  Auto treats the input as
    1-based when no 0 appears and the labels are exactly ``1..n``.
    """
    pairs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected 'u v' per line, got {line!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    if not pairs:
        return single_vertex()
    labels = sorted({x for e in pairs for x in e})
    if indexing not in ("auto", "0", "1"):
        raise ValueError("indexing must be auto, 0 or 1")
    if indexing == "1" or (
        indexing == "auto" and labels[0] >= 1 and labels == list(range(1, len(labels) + 1))
    ):
        pairs = [(u - 1, v - 1) for u, v in pairs]
        labels = [x - 1 for x in labels]
    if labels != list(range(len(labels))):
        raise ValueError("edge list labels are not contiguous from the base index")
    return Tree(len(labels), tuple(pairs))


# ---------------------------------------------------------------------------
# Canonical keys for labelled trees
# ---------------------------------------------------------------------------

def tree_centers(t: Tree) -> list[int]:
    """The one or two middle vertices obtained by repeatedly peeling leaves."""
    if t.n <= 2:
        return list(range(t.n))
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            deg[v] = 0
            for w in t.neighbors[v]:
                if deg[w] > 1:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_key(t: Tree, root: int, banned: int, label: Callable[[int], int]) -> bytes:
    """AHU signature of the subtree at ``root`` when the edge to ``banned`` is cut."""
    # Iterative post-order; child signatures are sorted so the key is
    # invariant under relabelling.
    order: list[tuple[int, int]] = []
    stack = [(root, banned)]
    while stack:
        v, parent = stack.pop()
        order.append((v, parent))
        for w in t.neighbors[v]:
            if w != parent:
                stack.append((w, v))
    sig: dict[int, bytes] = {}
    for v, parent in reversed(order):
        children = sorted(sig[w] for w in t.neighbors[v] if w != parent)
        sig[v] = b"(%d:" % label(v) + b"".join(children) + b")"
    return sig[root]


def canonical_key(t: Tree, labels: Mapping[int, int] | Sequence[int] | None = None) -> bytes:
    """Canonical byte string of a tree with vertex labels from a small alphabet.

    Two labelled trees get the same key exactly when a label-preserving
    isomorphism exists.  Rooting is at the center, or at the ordered pair of
    half-tree keys for bicentral trees.
    """
    if labels is None:
        label = lambda v: 0
    elif isinstance(labels, Mapping):
        label = lambda v: labels.get(v, 0)
    else:
        label = labels.__getitem__
    centers = tree_centers(t)
    if len(centers) == 1:
        return b"C" + _rooted_key(t, centers[0], -1, label)
    a, b = centers
    ka = _rooted_key(t, a, b, label)
    kb = _rooted_key(t, b, a, label)
    if kb < ka:
        ka, kb = kb, ka
    return b"B" + ka + kb


def _rooted_aut(t: Tree, root: int, banned: int) -> tuple[bytes, int]:
    """Signature and automorphism-group order of a rooted subtree."""
    children = [w for w in t.neighbors[root] if w != banned]
    sigs = sorted(_rooted_aut(t, w, root) for w in children)
    aut = 1
    for _, grp in itertools.groupby(sigs, key=lambda p: p[0]):
        block = list(grp)
        m = len(block)
        for _, sub in block:
            aut *= sub
        aut *= _factorial(m)
    key = b"(" + b"".join(s for s, _ in sigs) + b")"
    return key, aut


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def automorphism_count(t: Tree) -> int:
    """Order of the automorphism group of an unlabelled tree."""
    centers = tree_centers(t)
    if len(centers) == 1:
        return _rooted_aut(t, centers[0], -1)[1]
    a, b = centers
    ka, auta = _rooted_aut(t, a, b)
    kb, autb = _rooted_aut(t, b, a)
    total = auta * autb
    if ka == kb:
        total *= 2
    return total


# ---------------------------------------------------------------------------
# Exhaustive generation of free trees
# ---------------------------------------------------------------------------

def _rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """All canonical level sequences of rooted trees on n vertices.

    Beyer-Hedetniemi successor rule: start from the path, and at each step
    find the last entry above 2 and replay the prefix that precedes its
    parent level.
    """
    levels = list(range(1, n + 1))
    while True:
        yield levels
        p = max((i for i in range(n) if levels[i] > 2), default=-1)
        if p < 0:
            return
        q = max(i for i in range(p) if levels[i] == levels[p] - 1)
        levels = levels[:p] + [levels[i - (p - q)] for i in range(p, n)]


def _tree_from_levels(levels: Sequence[int]) -> Tree:
    parent_at_level = {levels[0]: 0}
    edges = []
    for v in range(1, len(levels)):
        lv = levels[v]
        edges.append((parent_at_level[lv - 1], v))
        parent_at_level[lv] = v
    return Tree(len(levels), tuple(edges))


def enumerate_free_trees(n: int) -> Iterator[Tree]:
    """Yield one representative per isomorphism class of trees on n vertices."""
    if not 1 <= n <= MAX_ENUMERATION_VERTICES:
        raise ValueError(
            f"free-tree enumeration supports 1 <= n <= {MAX_ENUMERATION_VERTICES}"
        )
    if n == 1:
        yield single_vertex()
        return
    seen: set[bytes] = set()
    for levels in _rooted_level_sequences(n):
        t = _tree_from_levels(levels)
        key = canonical_key(t)
        if key not in seen:
            seen.add(key)
            yield t


def prufer_decode(seq: Sequence[int], n: int) -> Tree:
    """Labelled tree on ``0..n-1`` from a Prufer sequence (length n-2)."""
    if n < 2:
        if seq:
            raise ValueError("sequence must be empty for n < 2")
        return single_vertex()
    if len(seq) != n - 2:
        raise ValueError("sequence length must be n - 2")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Tree(n, tuple(edges))
