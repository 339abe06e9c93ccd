"""Named tree families: the linear trees and the D- and E-shaped ones.

Vertex numbering follows the usual Dynkin pictures: D(n) hangs two extra
leaves off one end of a path, E(n) is the tree with a single triple point
and branches of sizes 1, 2 and n-4.
"""

from __future__ import annotations

from .trees import Tree


def linear_tree(n: int) -> Tree:
    """The path A(n) on n vertices."""
    if n < 1:
        raise ValueError("n >= 1")
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(leaves: int) -> Tree:
    """Center 0 with the given number of leaves."""
    if leaves < 0:
        raise ValueError("leaves >= 0")
    return Tree(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def d_tree(n: int) -> Tree:
    """D(n): leaves 0 and 1 both attached to 2, then the path 2-3-...-(n-1)."""
    if n < 4:
        raise ValueError("D-family needs n >= 4")
    edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)]
    return Tree(n, tuple(edges))


def e_tree(n: int) -> Tree:
    """E(n): triple point 0 with branches of sizes 1, 2 and n-4."""
    if n < 5:
        raise ValueError("E-family needs n >= 5")
    edges = [(0, 1), (0, 2), (2, 3)]
    prev = 0
    for v in range(4, n):
        edges.append((prev, v))
        prev = v
    return Tree(n, tuple(edges))


def family_tree(name: str, n: int) -> Tree:
    """Dispatch on a one-letter family name A, D or E."""
    key = name.strip().upper()
    if key == "A":
        return linear_tree(n)
    if key == "D":
        return d_tree(n)
    if key == "E":
        return e_tree(n)
    raise ValueError(f"unknown family {name!r} (expected A, D or E)")
