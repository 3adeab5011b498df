"""Minimum-length interval queries.

Given intervals with strictly increasing left and strictly increasing right
endpoints, the qualifying set for a query (a, b) is a contiguous index range
[i_min, i_max], and the shortest qualifier is a range-minimum over the
interval lengths. Two query paths are provided:

* ``mliq_naive`` — two membership-bitmap ranks locate i_min and i_max, then
  the direct range-min engine over the length heap answers.
* ``mliq_weighted`` — two weighted prefix selects (``bpselect``) place a and
  b directly into the BP encodings of the length heap and of its reversal,
  then one primal-dual-ancestor query answers. Opening parentheses of the
  forward BP carry the left-endpoint gaps; closing parentheses of the
  reversed BP carry the right-endpoint gaps in reverse with a one-past-the-
  end sentinel, so the affordable-prefix count pins the least index whose
  right endpoint reaches b.

Containment conventions: CLOSED (default) answers with intervals satisfying
a_i <= a <= b <= b_i; STRICT requires a_i < a and b_i > b. On integer
endpoints the two differ only by a unit shift of the query; both are exposed
and both are held to the brute-force oracle.
"""

from bisect import bisect_right

from . import codec, duality
from .bitseq import BitSeq
from .errors import ContractError, RangeError, ValidationError
from .minheap import build_minheap
from .parens import CLOSE_WEIGHTS, OPEN_WEIGHTS, ParenSeq
from .rmq import OpCounters, pda_fast, rmq_direct

# Endpoint membership domains larger than this use a sorted position list
# instead of a dense bitmap.
DENSE_DOMAIN_LIMIT = 1 << 22


class EndpointBitmap:
    """Membership-with-rank over integer endpoints 0..domain_max."""

    __slots__ = ("values", "_dense")

    def __init__(self, values, domain_max):
        self.values = list(values)
        if domain_max + 1 <= DENSE_DOMAIN_LIMIT:
            bits = bytearray(domain_max + 1)
            for v in self.values:
                bits[v] = 1
            self._dense = BitSeq(bits)
        else:
            self._dense = None

    def rank_leq(self, value):
        """Number of member endpoints <= value."""
        if value < 0:
            return 0
        if self._dense is not None:
            return self._dense.rank(min(value + 1, self._dense.n), 1)
        return bisect_right(self.values, value)

    def bits(self):
        return self._dense


class IntervalSet:
    """Sorted interval family with bitmap and weighted-parenthesis search
    structures over the lengths' 2D-Min-Heap."""

    __slots__ = ("a", "b", "lengths", "heap", "bitmap_a", "bitmap_b", "bp_open", "bp_close")

    def __init__(self, a, b, lengths, heap, bitmap_a, bitmap_b, bp_open, bp_close):
        self.a = a
        self.b = b
        self.lengths = lengths
        self.heap = heap
        self.bitmap_a = bitmap_a
        self.bitmap_b = bitmap_b
        self.bp_open = bp_open
        self.bp_close = bp_close

    @property
    def n(self):
        return len(self.a)

    @property
    def domain_max(self):
        return self.b[-1]


def build_intervals(pairs) -> IntervalSet:
    """Validate a family of (a_i, b_i) pairs and build all query structures."""
    a = []
    b = []
    for idx, (ai, bi) in enumerate(pairs, start=1):
        if not (isinstance(ai, int) and isinstance(bi, int)) or ai < 0 or bi < 0:
            raise ValidationError(f"interval {idx}: endpoints must be non-negative integers")
        if ai > bi:
            raise ValidationError(f"interval {idx}: left endpoint {ai} exceeds right endpoint {bi}")
        if a and ai <= a[-1]:
            raise ValidationError(f"interval {idx}: left endpoints not strictly increasing")
        if b and bi <= b[-1]:
            raise ValidationError(f"interval {idx}: right endpoints not strictly increasing")
        a.append(ai)
        b.append(bi)
    if not a:
        raise ValidationError("interval family must not be empty")

    n = len(a)
    lengths = [b[k] - a[k] + 1 for k in range(n)]
    heap = build_minheap(lengths)

    bitmap_a = EndpointBitmap(a, b[-1])
    bitmap_b = EndpointBitmap(b, b[-1])

    # Forward BP: the (i+1)-th opening parenthesis is interval i; its weight
    # is the left-endpoint gap, so the open-weight prefix there equals a_i.
    bp_bits, bp_map = codec.bp_encode(heap.tree)
    open_positions = sorted(bp_map.open_pos.values())
    open_weights = {}
    prev = 0
    for i in range(1, n + 1):
        open_weights[open_positions[i]] = a[i - 1] - prev
        prev = a[i - 1]
    bp_open = _reweigh(bp_bits, open_weights=open_weights)

    # Reversed BP: its i-th closing parenthesis is interval n+1-i, so close
    # weights are the right-endpoint gaps reversed, with sentinel b_n + 1.
    rev_bits, _ = codec.bp_encode(duality.reverse(heap.tree))
    gaps = [b[0]] + [b[k] - b[k - 1] for k in range(1, n)] + [1]
    close_positions = [rev_bits.select(i, 0) for i in range(1, n + 2)]
    close_weights = {close_positions[i]: gaps[n + 1 - (i + 1)] for i in range(n + 1)}
    bp_close = _reweigh(rev_bits, close_weights=close_weights)

    s = IntervalSet(a, b, lengths, heap, bitmap_a, bitmap_b, bp_open, bp_close)
    _verify_weight_prefixes(s)
    return s


def _reweigh(p, open_weights=None, close_weights=None):
    return ParenSeq(p.base, open_weights=open_weights, close_weights=close_weights)


def _verify_weight_prefixes(s):
    n = s.n
    opens = [s.bp_open.select(i, 1) for i in range(1, n + 2)]
    for i in range(1, n + 1):
        got = s.bp_open.weight_prefix(OPEN_WEIGHTS, opens[i])
        if got != s.a[i - 1]:
            raise AssertionError(f"open-weight prefix at opening {i + 1} is {got}, expected {s.a[i - 1]}")
    sentinel = s.b[-1] + 1
    closes = [s.bp_close.select(i, 0) for i in range(1, n + 2)]
    for i in range(1, n + 2):
        got = s.bp_close.weight_prefix(CLOSE_WEIGHTS, closes[i - 1])
        expect = sentinel - (s.b[n - i] if i <= n else 0)
        if got != expect:
            raise AssertionError(f"close-weight prefix at closing {i} is {got}, expected {expect}")


STRICT = "strict"
CLOSED = "closed"


def mliq_bruteforce(s, a, b, strict=False):
    """Scan every interval under the active convention; leftmost shortest."""
    _check_query(s, a, b)
    best = None
    for i in range(1, s.n + 1):
        ai, bi = s.a[i - 1], s.b[i - 1]
        ok = (ai < a and bi > b) if strict else (ai <= a and bi >= b)
        if ok and (best is None or s.lengths[i - 1] < s.lengths[best - 1]):
            best = i
    return best


def mliq_naive(s, a, b, strict=False, counters=None):
    """Bitmap ranks bound the qualifying index range, then a range-min over
    lengths picks the answer. Two ranks + (2 select + 1 rmq + 1 rank)."""
    _check_query(s, a, b)
    c = counters if counters is not None else OpCounters()
    if strict:
        i_max = s.bitmap_a.rank_leq(a - 1)
        i_min = s.bitmap_b.rank_leq(b) + 1
    else:
        i_max = s.bitmap_a.rank_leq(a)
        i_min = s.bitmap_b.rank_leq(b - 1) + 1
    c.rank += 2
    if i_max < i_min:
        return None
    return rmq_direct(s.heap, i_min, i_max, c)


def mliq_weighted(s, a, b, strict=False, counters=None):
    """Two bpselects place the query endpoints; one primal-dual-ancestor
    query answers. Exactly 2 bpselect + one pda invocation."""
    _check_query(s, a, b)
    c = counters if counters is not None else OpCounters()
    n = s.n
    sentinel = s.b[-1] + 1

    budget_a = a - 1 if strict else a
    if budget_a < 0:
        return None  # strict containment of a = 0 is impossible
    _w, cnt_a = s.bp_open.bpselect_with_count(OPEN_WEIGHTS, budget_a)
    c.bpselect += 1
    i_max = cnt_a

    budget_b = sentinel - b - 1 if strict else sentinel - b
    q, cnt_b = s.bp_close.bpselect_with_count(CLOSE_WEIGHTS, budget_b)
    c.bpselect += 1
    i_min = max(1, n + 1 - cnt_b)
    _v = 2 * n - q + 3  # mirror image of q in the forward BP, one past the boundary open

    if i_min > i_max:
        return None
    node = pda_fast(s.heap.tree, s.heap.dfuds, s.heap.node_of(i_min), s.heap.node_of(i_max), c)
    return s.heap.index_of(node)


def _check_query(s, a, b):
    if a > b:
        raise ContractError(f"query left endpoint {a} exceeds right endpoint {b}")
    if a < 0 or b > s.domain_max:
        raise RangeError(f"query ({a}, {b}) outside endpoint domain 0..{s.domain_max}")
