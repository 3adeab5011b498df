"""2D-Min-Heaps: the ordinal tree of an array under nearest-smaller-to-the-left.

Position m+1 attaches as the rightmost child of the rightmost earlier
position whose value is <= the new one, falling back to a sentinel root.
Depth-first order of the resulting tree coincides with array order, which is
what lets parenthesis positions stand in for array indices.

Ties attach to the *rightmost* qualifying predecessor (non-strict rule), so
every range-minimum engine over the heap reports the leftmost minimum.
"""

from . import codec, duality
from .errors import ContractError
from .tree import OrdinalTree

ROOT_LABEL = 0


class MinHeapIndex:
    """An array together with its heap tree and query-ready DFUDS structure.

    The single stored bit sequence is the DFUDS of the heap tree, which is
    simultaneously the BP of its reversed dual; all engines share it.
    """

    __slots__ = ("values", "tree", "dfuds", "dfuds_map")

    def __init__(self, values, tree, dfuds, dfuds_map):
        self.values = values
        self.tree = tree
        self.dfuds = dfuds
        self.dfuds_map = dfuds_map

    @property
    def n(self):
        return len(self.values)

    def value(self, i):
        return self.values[i - 1]

    def node_of(self, i):
        """Tree node for array position i (labels are the positions)."""
        if not 1 <= i <= self.n:
            raise ContractError(f"position {i} outside 1..{self.n}")
        return i

    def index_of(self, node):
        if node == ROOT_LABEL:
            raise ContractError("the sentinel root maps to no array position")
        return node


def build_minheap(values) -> MinHeapIndex:
    """Build the heap index for a non-empty array of comparable values."""
    values = list(values)
    if not values:
        raise ContractError("array must hold at least one element")
    children = {ROOT_LABEL: []}
    spine = []  # (position, value) rightmost path, values increasing
    for pos, val in enumerate(values, start=1):
        while spine and spine[-1][1] > val:
            spine.pop()
        parent = spine[-1][0] if spine else ROOT_LABEL
        children.setdefault(parent, []).append(pos)
        children.setdefault(pos, [])
        spine.append((pos, val))
    tree = OrdinalTree.from_children(ROOT_LABEL, {v: tuple(k) for v, k in children.items()})
    dfuds, dfuds_map = codec.dfuds_encode(tree)
    return MinHeapIndex(values, tree, dfuds, dfuds_map)


def reversal_dual_check(values) -> bool:
    """Whether the dual of the heap equals the heap of the reversed array,
    identifying position i with position n-i+1. Requires distinct values."""
    values = list(values)
    srt = sorted(values)
    if any(srt[k] == srt[k + 1] for k in range(len(srt) - 1)):
        raise ContractError("values must be distinct")
    n = len(values)
    d = duality.dual(build_minheap(values).tree)
    relabeled = {
        (ROOT_LABEL if v == ROOT_LABEL else n + 1 - v): tuple(
            ROOT_LABEL if c == ROOT_LABEL else n + 1 - c for c in d.children(v)
        )
        for v in d.nodes()
    }
    mirrored = OrdinalTree.from_children(ROOT_LABEL, relabeled)
    return mirrored == build_minheap(values[::-1]).tree
