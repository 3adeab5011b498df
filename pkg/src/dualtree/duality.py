"""Tree duality: the dual, reversed and reversed-dual constructions, the
primal-dual ancestor, and the joining algebra used to decompose duals.

The dual exchanges parent/sibling and left/right roles. It is built twice —
once from the local attachment rules, once from the right-neighbour
characterization (parent in the dual = first node after the subtree) — and
the two results are cross-checked on every call.
"""

from dataclasses import dataclass

from .errors import ContractError
from .tree import OrdinalTree

RULE_1B = "1b"
RULE_2 = "2"
RULE_3 = "3"


@dataclass(frozen=True)
class DualityCertificate:
    """Dual tree together with the rule that attached each non-root node."""

    original: OrdinalTree
    transformed: OrdinalTree
    rules: dict  # non-root label -> RULE_1B | RULE_2 | RULE_3


def dual(t: OrdinalTree) -> OrdinalTree:
    """The dual tree; same node set, parenthood and sibling order exchanged."""
    return dual_certified(t).transformed


def dual_certified(t: OrdinalTree) -> DualityCertificate:
    by_rules, rules = _dual_by_rules(t)
    by_parents = _dual_by_right_neighbour(t)
    if by_rules != by_parents:
        raise AssertionError("rule-based and right-neighbour duals disagree; duality is broken")
    return DualityCertificate(t, by_rules, rules)


def _dual_by_rules(t: OrdinalTree):
    # Rightmost child in the dual: for the root its own rightmost child,
    # for any other node its immediate left sibling. Walking rmc links of
    # the original extends each dual child list leftwards.
    rules = {}
    root = t.root
    for v in t.nodes():
        if v == root:
            continue
        irs = t.navigate(v, "irs")
        is_rmc = t.navigate(t.parent(v), "rmc") == v
        if irs is not None:
            rules[v] = RULE_3
        elif t.parent(v) == root:
            rules[v] = RULE_1B
        else:
            rules[v] = RULE_2
        if (irs is not None) == is_rmc:
            raise AssertionError(f"node {v!r} must be a rightmost child xor have a right sibling")

    children = {}
    for w in t.nodes():
        if w == root:
            rightmost = t.navigate(root, "rmc")
        else:
            rightmost = t.navigate(w, "ils")
        chain = []
        x = rightmost
        while x is not None:
            chain.append(x)
            x = t.navigate(x, "rmc")
        children[w] = tuple(reversed(chain))
    return OrdinalTree.from_children(root, children), rules


def _dual_by_right_neighbour(t: OrdinalTree):
    # Parent of v in the dual is the first node right of v's subtree (the
    # root when none exists); siblings order by descending primal position.
    root = t.root
    groups = {}
    for v in t.nodes():
        if v == root:
            continue
        p = dual_parent(t, v)
        groups.setdefault(p, []).append(v)
    children = {v: () for v in t.nodes()}
    for p, kids in groups.items():
        kids.sort(key=t.dft, reverse=True)
        children[p] = tuple(kids)
    return OrdinalTree.from_children(root, children)


def dual_parent(t: OrdinalTree, v) -> object:
    """Parent of v in the dual: first node right of v's subtree, else the root."""
    if v == t.root:
        raise ContractError("the root has no parent in the dual")
    nxt = t.first_right(v)
    return t.root if nxt is None else nxt


def reverse(t: OrdinalTree) -> OrdinalTree:
    """Same parents, every child list reversed."""
    children = {v: tuple(reversed(t.children(v))) for v in t.nodes()}
    return OrdinalTree.from_children(t.root, children)


def reversed_dual(t: OrdinalTree) -> OrdinalTree:
    """reverse(dual(t)): the tree whose BP encoding equals DFUDS of t."""
    return reverse(dual(t))


def dual_of_reversed(t: OrdinalTree) -> OrdinalTree:
    """dual(reverse(t)); kept separate from reversed_dual for differential
    comparison — the two compositions do not commute in general."""
    return dual(reverse(t))


def primal_dual_ancestor(t: OrdinalTree, v1, v2) -> object:
    """The unique node v with v1 in the dual subtree of v and v2 in the
    primal subtree of v, by direct walk over dual ancestors of v1."""
    if v1 == t.root or v2 == t.root:
        raise ContractError("arguments must not be the root")
    if t.dft(v1) > t.dft(v2):
        raise ContractError(f"{v1!r} does not precede {v2!r} in depth-first order")
    limit = t.dft(v2)
    x = v1
    while True:
        nxt = t.first_right(x)
        if nxt is None or t.dft(nxt) > limit:
            return x
        x = nxt


def join(t1: OrdinalTree, t2: OrdinalTree) -> OrdinalTree:
    """Insert the children of t1's root as children of the rightmost child
    of t2's root, which must exist and be a leaf."""
    attach = t2.navigate(t2.root, "rmc")
    if attach is None:
        raise ContractError("second tree's root has no rightmost child")
    if t2.children(attach):
        raise ContractError(f"rightmost child {attach!r} of the second tree's root is not a leaf")
    moved = [v for v in t1.nodes() if v != t1.root]
    overlap = set(moved) & set(t2.nodes())
    if overlap:
        raise ContractError(f"label collision between joined trees: {sorted(map(repr, overlap))}")
    children = t2.children_map()
    for v in moved:
        children[v] = t1.children(v)
    children[attach] = t1.children(t1.root)
    return OrdinalTree.from_children(t2.root, children)


def join_all(trees) -> OrdinalTree:
    """Left-associative fold of ``join`` over two or more trees."""
    trees = list(trees)
    if not trees:
        raise ContractError("need at least one tree to join")
    acc = trees[0]
    for t in trees[1:]:
        acc = join(acc, t)
    return acc


def root_prepend(label, t: OrdinalTree) -> OrdinalTree:
    """New root with the old root as its single child."""
    if t.has_node(label):
        raise ContractError(f"label {label!r} already used in the tree")
    children = t.children_map()
    children[label] = (t.root,)
    return OrdinalTree.from_children(label, children)


def is_quasi_subtree(a: OrdinalTree, t: OrdinalTree) -> bool:
    """True when every immediate-left-sibling relation of ``a`` holds in ``t``
    and every rightmost-child relation at a non-root node of ``a`` does too."""
    for v in a.nodes():
        if not t.has_node(v):
            raise ContractError(f"node {v!r} of the candidate does not occur in the host tree")
    for v in a.nodes():
        ils = a.navigate(v, "ils")
        if ils is not None and t.navigate(v, "ils") != ils:
            return False
        if v != a.root:
            rmc = a.navigate(v, "rmc")
            if rmc is not None and t.navigate(v, "rmc") != rmc:
                return False
    return True


def dual_edge_violations(a: OrdinalTree, t: OrdinalTree) -> list:
    """Edges of dual(a) missing from dual(t).

    Edges incident to either tree's root are exempt: the attachment of a
    quasi-subtree's own root children is not determined by the host tree.
    """
    da = dual(a)
    dt = dual(t)
    bad = []
    for v in da.nodes():
        p = da.parent(v)
        if p is None:
            continue
        if p in (t.root, a.root) or v in (t.root, a.root):
            continue
        if dt.parent(v) != p:
            bad.append((p, v))
    return bad
