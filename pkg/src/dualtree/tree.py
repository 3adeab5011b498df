"""Explicit rooted ordered trees.

OrdinalTree is the ground truth every parenthesis structure is checked
against. Labels are opaque hashable values preserved by all transformations;
two trees are equal when root, parent map and child orders coincide.
Depth-first (preorder) numbers, depths and subtree sizes are computed once at
construction, so navigation and range queries are table lookups.
"""

from .errors import ContractError, ValidationError

PARENT = "parent"
RMC = "rmc"
LMC = "lmc"
ILS = "ils"
IRS = "irs"

_NAV_KINDS = (PARENT, RMC, LMC, ILS, IRS)


class OrdinalTree:
    __slots__ = ("root", "_children", "_parent", "_dft", "_by_dft", "_depth", "_size")

    def __init__(self, root, children, parent):
        self.root = root
        self._children = children
        self._parent = parent
        self._index()

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_children(cls, root, children):
        """Build from a root label and a label -> ordered child tuple map."""
        norm = {}
        parent = {}
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            kids = tuple(children.get(v, ()))
            if len(set(kids)) != len(kids):
                raise ValidationError(f"node {v!r} has duplicate children")
            norm[v] = kids
            for c in kids:
                if c in seen:
                    raise ValidationError(f"node {c!r} appears twice (cycle or shared child)")
                seen.add(c)
                parent[c] = v
                stack.append(c)
        extra = set(children) - set(norm)
        if extra:
            raise ValidationError(f"child lists given for unreachable nodes: {sorted(map(repr, extra))}")
        return cls(root, norm, parent)

    @classmethod
    def build(cls, parents, child_orders):
        """Build and validate from a parent map plus explicit child orders.

        ``parents`` maps each non-root node to its parent (the root either
        has no entry or maps to None). ``child_orders`` lists the ordered
        children of every node that has any.
        """
        nodes = set(parents) | set(child_orders)
        for kids in child_orders.values():
            nodes.update(kids)
        nodes.update(p for p in parents.values() if p is not None)
        roots = [v for v in nodes if parents.get(v) is None]
        if not roots:
            raise ValidationError("no root: every node has a parent (cycle)")
        if len(roots) > 1:
            raise ValidationError(f"multiple roots: {sorted(map(repr, roots))}")
        root = roots[0]
        children = {}
        for v in nodes:
            kids = tuple(child_orders.get(v, ()))
            if len(set(kids)) != len(kids):
                raise ValidationError(f"node {v!r} has duplicate children")
            for c in kids:
                if parents.get(c) != v:
                    raise ValidationError(f"node {c!r} listed under {v!r} but its parent entry says {parents.get(c)!r}")
            children[v] = kids
        for c, p in parents.items():
            if p is None:
                continue
            if c not in children.get(p, ()):
                raise ValidationError(f"node {c!r} has parent {p!r} but is missing from its child order")
        tree = cls.from_children(root, children)
        if tree.n_nodes != len(nodes):
            missing = nodes - set(tree._dft)
            raise ValidationError(f"nodes unreachable from root (cycle): {sorted(map(repr, missing))}")
        return tree

    def _index(self):
        dft = {}
        depth = {self.root: 0}
        order = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            dft[v] = len(order)
            d = depth[v] + 1
            for c in reversed(self._children[v]):
                depth[c] = d
                stack.append(c)
        self._dft = dft
        self._by_dft = order
        self._depth = depth
        size = dict.fromkeys(order, 1)
        for v in reversed(order):
            if v != self.root:
                size[self._parent[v]] += size[v]
        self._size = size

    # -- basic accessors ---------------------------------------------------------

    @property
    def n_nodes(self):
        return len(self._by_dft)

    def nodes(self):
        """All labels in depth-first order (root first)."""
        return iter(self._by_dft)

    def has_node(self, v):
        return v in self._dft

    def children(self, v):
        self._check_node(v)
        return self._children[v]

    def parent(self, v):
        self._check_node(v)
        return self._parent.get(v)

    def dft(self, v):
        self._check_node(v)
        return self._dft[v]

    def node_at(self, rank):
        if not 1 <= rank <= self.n_nodes:
            raise ContractError(f"depth-first rank {rank} outside 1..{self.n_nodes}")
        return self._by_dft[rank - 1]

    def depth(self, v):
        self._check_node(v)
        return self._depth[v]

    def subtree_size(self, v):
        self._check_node(v)
        return self._size[v]

    def in_subtree(self, x, v):
        """True when x lies in the subtree hanging off (and including) v."""
        dv = self.dft(v)
        return dv <= self.dft(x) < dv + self._size[v]

    # -- navigation ----------------------------------------------------------------

    def navigate(self, v, kind):
        """Named relative of v (parent / rmc / lmc / ils / irs), or None."""
        self._check_node(v)
        if kind == PARENT:
            return self._parent.get(v)
        if kind in (RMC, LMC):
            kids = self._children[v]
            if not kids:
                return None
            return kids[-1] if kind == RMC else kids[0]
        if kind in (ILS, IRS):
            p = self._parent.get(v)
            if p is None:
                return None
            sibs = self._children[p]
            k = sibs.index(v)
            if kind == ILS:
                return sibs[k - 1] if k else None
            return sibs[k + 1] if k + 1 < len(sibs) else None
        raise ContractError(f"unknown navigation kind {kind!r}; expected one of {_NAV_KINDS}")

    def first_right(self, v):
        """First node in depth-first order after v's subtree, or None.

        This is the smallest element of the set of nodes right of v, i.e.
        everything outside v's subtree that follows it.
        """
        self._check_node(v)
        if v == self.root:
            raise ContractError("the root has no nodes to its right")
        nxt = self._dft[v] + self._size[v]
        return self._by_dft[nxt - 1] if nxt <= self.n_nodes else None

    def range_min_depth(self, v1, v2):
        """(minimal depth, rightmost node attaining it) over the closed
        depth-first range [v1, v2]; neither endpoint may be the root."""
        self._check_node(v1)
        self._check_node(v2)
        if v1 == self.root or v2 == self.root:
            raise ContractError("range endpoints must not be the root")
        lo, hi = self._dft[v1], self._dft[v2]
        if lo > hi:
            raise ContractError(f"{v1!r} does not precede {v2!r} in depth-first order")
        best = None
        best_d = None
        for rank in range(lo, hi + 1):
            x = self._by_dft[rank - 1]
            d = self._depth[x]
            if best_d is None or d <= best_d:
                best_d = d
                best = x
        return best_d, best

    def subtree(self, v):
        """A standalone copy of the subtree rooted at v (labels preserved)."""
        self._check_node(v)
        children = {}
        stack = [v]
        while stack:
            x = stack.pop()
            children[x] = self._children[x]
            stack.extend(self._children[x])
        return OrdinalTree.from_children(v, children)

    # -- comparison -------------------------------------------------------------------

    def children_map(self):
        return dict(self._children)

    def parent_map(self):
        return dict(self._parent)

    def __eq__(self, other):
        return (
            isinstance(other, OrdinalTree)
            and self.root == other.root
            and self._children == other._children
        )

    def __hash__(self):
        return hash((self.root, self.n_nodes))

    def __repr__(self):
        return f"OrdinalTree(root={self.root!r}, nodes={self.n_nodes})"

    def _check_node(self, v):
        if v not in self._dft:
            raise ContractError(f"unknown node {v!r}")
