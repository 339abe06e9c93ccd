"""The brute-force point counter and its agreement with the polynomials."""

from __future__ import annotations

import itertools
import random

import pytest

from treecount.coloring import Color, canonical_coloring, red_green_components
from treecount.counting import all_phi_assignments, count_polynomial
from treecount.families import d_tree, linear_tree, star_tree
from treecount.fqoracle import (
    NO_GENERIC_PARAMETERS,
    ConstancyError,
    FqContext,
    GuardError,
    NoGenericParameters,
    assert_edge_cover,
    count_fixed,
    count_points,
    jump_alpha,
    verify_polynomial,
)
from treecount.matchings import maximum_matching, uncovered_vertices
from treecount.trees import Tree
from conftest import colored, trees_up_to


def test_context_requires_prime():
    with pytest.raises(ValueError):
        FqContext(6)
    assert FqContext(7).q == 7


def test_count_fixed_examples():
    single = Tree(1, ())
    assert count_fixed(single, FqContext(2), [1]) == 3
    assert count_fixed(single, FqContext(3), [1]) == 2
    assert count_fixed(linear_tree(2), FqContext(2), [1, 1]) == 5


def test_count_fixed_matches_naive_enumeration():
    """Cross-check the vectorized sweep against a dead-simple double loop."""
    rng = random.Random(1)
    for t in list(trees_up_to(4)):
        for q in (2, 3, 5):
            alpha = [rng.randrange(1, q) for _ in range(t.n)]
            naive = 0
            for xs in itertools.product(range(q), repeat=t.n):
                for xps in itertools.product(range(q), repeat=t.n):
                    ok = True
                    for i in range(t.n):
                        prod = 1
                        for j in t.neighbors[i]:
                            prod = prod * xs[j] % q
                        if (xs[i] * xps[i] - 1 - alpha[i] * prod) % q:
                            ok = False
                            break
                    naive += ok
            assert count_fixed(t, FqContext(q), alpha) == naive


def test_count_points_examples():
    single = Tree(1, ())
    assert count_points(single, "versal", FqContext(2)) == 3
    assert isinstance(
        count_points(single, "generic", FqContext(2)), NoGenericParameters
    )
    assert count_points(single, "generic", FqContext(3)) == 2
    assert count_points(linear_tree(3), "generic", FqContext(5)) == 124
    assert count_points(d_tree(4), "generic", FqContext(5)) == 576


def test_jump_invariance_of_counts():
    """Jumping the coefficients is an isomorphism, so counts agree."""
    rng = random.Random(9)
    for t in trees_up_to(6):
        c = canonical_coloring(t)
        if t.n == 1:
            continue
        for q in (3, 5):
            alpha = [rng.randrange(1, q) for _ in range(t.n)]
            base = count_fixed(t, FqContext(q), alpha)
            for _ in range(4):
                u = rng.randrange(t.n)
                nbrs = [
                    v
                    for v in t.neighbors[u]
                    if {c.colors[u], c.colors[v]} == {Color.RED, Color.GREEN}
                    or (
                        c.colors[u] is Color.ORANGE
                        and tuple(sorted((u, v))) in c.dominoes
                    )
                ]
                if not nbrs:
                    continue
                v = rng.choice(nbrs)
                alpha = jump_alpha(t, alpha, u, v, q)
                assert count_fixed(t, FqContext(q), alpha) == base


def test_edge_cover_property():
    """No solution has both ends of an edge at zero (n <= 5 sweep)."""
    rng = random.Random(13)
    for t in trees_up_to(5):
        for q in (2, 3, 5):
            alpha = [rng.randrange(1, q) for _ in range(t.n)]
            assert_edge_cover(t, FqContext(q), alpha)


def test_verify_examples():
    rep = verify_polynomial(linear_tree(2), None, [2, 3, 5])
    assert rep.passed and all(c.status == "ok" for c in rep.checks)
    rep = verify_polynomial(Tree(1, ()), "generic", [2])
    assert rep.passed and rep.checks[0].status == "skipped"
    rep = verify_polynomial(d_tree(4), "generic", [3, 5])
    assert rep.passed
    assert [c.status for c in rep.checks] == ["skipped", "ok"]
    assert rep.checks[1].oracle == 576


def test_verify_all_small_trees():
    """Acceptance pushes this to n <= 7; keep the default suite at n <= 5."""
    for t in trees_up_to(5):
        _, part = colored(t)
        for phi in all_phi_assignments(part):
            rep = verify_polynomial(t, phi, [2, 3, 5], force=True)
            assert rep.passed, (t.edges, phi, rep)
            assert any(c.status == "ok" for c in rep.checks)


def test_generic_constancy_is_asserted():
    """All passing tuples must give one number; the sweep would raise
    otherwise.  Run a case with many passing tuples to exercise it."""
    got = count_points(star_tree(4), "generic", FqContext(7))
    expected = count_polynomial(star_tree(4), "generic")(7)
    assert got == expected


def test_guard_and_force():
    big = linear_tree(13)
    with pytest.raises(GuardError):
        count_fixed(big, FqContext(7), [1] * 13)
    with pytest.raises(GuardError):
        count_points(star_tree(6), "versal", FqContext(31))
    # force runs anyway at feasible sizes
    assert count_points(
        star_tree(6), "versal", FqContext(3), force=True
    ) == count_polynomial(star_tree(6), "versal")(3)


def test_batched_table_matches_per_alpha_counts():
    """The one-pass parameter table equals vertexwise count_fixed calls."""
    for t in [linear_tree(3), linear_tree(5), d_tree(4), star_tree(3)]:
        q = 3
        c = canonical_coloring(t)
        m = maximum_matching(t)
        free = uncovered_vertices(t, m)
        from treecount.fqoracle import _alpha_table

        table = _alpha_table(t, q, free, {v: 1 for v in range(t.n) if v not in free})
        for values in itertools.product(range(1, q), repeat=len(free)):
            alpha = [1] * t.n
            for v, a in zip(free, values):
                alpha[v] = a
            idx = tuple(a - 1 for a in values)
            assert int(table[idx]) == count_fixed(t, FqContext(q), alpha)
