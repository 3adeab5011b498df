"""Seeded random inputs for the verification suites.

Everything takes an explicit random.Random so suite output is reproducible;
string seeding keeps results independent of hash randomization.
"""

import random

from .tree import OrdinalTree


def rng_for(seed, topic: str) -> random.Random:
    return random.Random(f"{seed}:{topic}")


def random_tree(rng: random.Random, n: int) -> OrdinalTree:
    """Uniform-attachment ordered tree with n nodes labelled 1..n (root 1).

    Each new node picks a random existing parent and a random slot in its
    child list, so both deep chains and wide fans occur.
    """
    if n < 1:
        raise ValueError("tree needs at least one node")
    children = {1: []}
    for v in range(2, n + 1):
        p = rng.randint(1, v - 1)
        kids = children[p]
        kids.insert(rng.randint(0, len(kids)), v)
        children[v] = []
    return OrdinalTree.from_children(1, {v: tuple(k) for v, k in children.items()})


def random_array(rng: random.Random, n: int, span: int | None = None) -> list:
    """Integer array of length n; small spans make duplicates likely."""
    if span is None:
        span = max(2, n // 2) if rng.random() < 0.5 else 4 * n
    return [rng.randint(-span, span) for _ in range(n)]


def random_distinct_array(rng: random.Random, n: int) -> list:
    return rng.sample(range(-8 * n - 4, 8 * n + 4), n)


def random_intervals(rng: random.Random, n: int, max_gap: int = 16):
    """Interval family with strictly increasing endpoints and a_i <= b_i."""
    a = []
    b = []
    ca = rng.randint(0, 3)
    cb = ca + rng.randint(0, max_gap - 1)
    for _ in range(n):
        a.append(ca)
        b.append(max(cb, ca))
        ca += rng.randint(1, max_gap)
        cb = max(cb, ca - 1) + rng.randint(1, max_gap)
    return list(zip(a, b))


def random_node_pair(rng: random.Random, t: OrdinalTree):
    """Two non-root nodes in depth-first order, or None for a 1-node tree."""
    n = t.n_nodes
    if n < 2:
        return None
    r1 = rng.randint(2, n)
    r2 = rng.randint(2, n)
    if r1 > r2:
        r1, r2 = r2, r1
    return t.node_at(r1), t.node_at(r2)
