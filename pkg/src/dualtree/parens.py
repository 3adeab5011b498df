"""Balanced-parenthesis sequences.

A ParenSeq wraps a balanced BitSeq (1 = opening, 0 = closing) and adds the
excess profile, matching (open/close), range-minimum queries over the excess
array with an explicit leftmost/rightmost tiebreak, and weighted prefix
select over per-side parenthesis weights (``bpselect``).

The excess RMQ uses fixed-size block minima plus a sparse table over blocks;
within a block the query falls back to a direct scan. Adjacent excess values
differ by exactly one, which the forward/backward matching searches exploit.
"""

from bisect import bisect_right

from .bitseq import BitSeq
from .errors import ContractError, RangeError, ValidationError

OPEN = 1
CLOSE = 0

LEFTMOST = "leftmost"
RIGHTMOST = "rightmost"

OPEN_WEIGHTS = "open-weights"
CLOSE_WEIGHTS = "close-weights"

_BLOCK = 64


class ParenSeq:
    """Immutable balanced parenthesis sequence with query support."""

    __slots__ = ("base", "n", "_exc", "_bmin", "_bmax", "_table", "_weights")

    def __init__(self, bits, open_weights=None, close_weights=None):
        self.base = bits if isinstance(bits, BitSeq) else BitSeq(bits)
        self.n = self.base.n
        exc = [0] * (self.n + 1)
        run = 0
        for x, b in enumerate(self.base.iter_bits(), start=1):
            run += 1 if b else -1
            if run < 0:
                raise ValidationError(f"unbalanced sequence: excess drops below zero at position {x}")
            exc[x] = run
        if run != 0:
            raise ValidationError(f"unbalanced sequence: {run} unmatched opening parentheses")
        self._exc = exc
        self._build_blocks()
        self._weights = {
            OPEN_WEIGHTS: self._prepare_weights(open_weights, OPEN),
            CLOSE_WEIGHTS: self._prepare_weights(close_weights, CLOSE),
        }

    # -- construction helpers -------------------------------------------------

    def _build_blocks(self):
        exc = self._exc
        nblocks = (self.n + _BLOCK - 1) // _BLOCK
        bmin = [0] * nblocks
        bmax = [0] * nblocks
        for k in range(nblocks):
            lo = k * _BLOCK + 1
            hi = min(lo + _BLOCK, self.n + 1)
            chunk = exc[lo:hi]
            bmin[k] = min(chunk)
            bmax[k] = max(chunk)
        self._bmin = bmin
        self._bmax = bmax
        # table[j][k] = (min value, leftmost block, rightmost block) over blocks [k, k + 2^j)
        table = [[(v, k, k) for k, v in enumerate(bmin)]]
        span = 1
        while 2 * span <= nblocks:
            prev = table[-1]
            row = []
            for k in range(nblocks - 2 * span + 1):
                lv, ll, lr = prev[k]
                rv, rl, rr = prev[k + span]
                if lv < rv:
                    row.append((lv, ll, lr))
                elif rv < lv:
                    row.append((rv, rl, rr))
                else:
                    row.append((lv, ll, rr))
            table.append(row)
            span *= 2
        self._table = table

    def _prepare_weights(self, weights, symbol):
        if weights is None:
            return None
        positions = sorted(weights)
        cum = []
        total = 0
        for pos in positions:
            w = weights[pos]
            if not isinstance(w, int) or w < 0:
                raise ValidationError(f"weight at position {pos} must be a non-negative integer, got {w!r}")
            if not 1 <= pos <= self.n:
                raise ValidationError(f"weighted position {pos} outside 1..{self.n}")
            if w and self.base.bit(pos) != symbol:
                raise ValidationError(
                    f"nonzero weight at position {pos} does not sit on a "
                    f"{'opening' if symbol else 'closing'} parenthesis"
                )
            total += w
            cum.append(total)
        return positions, cum

    # -- basic queries ---------------------------------------------------------

    def __len__(self):
        return self.n

    def bit(self, x: int) -> int:
        return self.base.bit(x)

    def rank(self, x: int, s: int) -> int:
        return self.base.rank(x, s)

    def select(self, i: int, s: int) -> int:
        return self.base.select(i, s)

    def to_string(self) -> str:
        return "".join("()"[1 - b] for b in self.base.iter_bits())

    def excess(self, x: int) -> int:
        """rank_1(x) - rank_0(x); the depth profile of the sequence."""
        if not 1 <= x <= self.n:
            raise RangeError(f"position {x} outside 1..{self.n}")
        return self._exc[x]

    # -- matching --------------------------------------------------------------

    def close(self, x: int) -> int:
        """Position of the closing parenthesis matching the opening one at x."""
        if self.base.bit(x) != OPEN:
            raise ContractError(f"position {x} is not an opening parenthesis")
        return self._fwd_to(x + 1, self._exc[x] - 1)

    def open(self, x: int) -> int:
        """Position of the opening parenthesis matching the closing one at x."""
        if self.base.bit(x) != CLOSE:
            raise ContractError(f"position {x} is not a closing parenthesis")
        return self._bwd_to(x - 1, self._exc[x]) + 1

    def _fwd_to(self, start: int, target: int) -> int:
        """Smallest y >= start with excess(y) == target; target < excess(start-1)."""
        exc = self._exc
        kb = (start - 1) // _BLOCK
        hi = min((kb + 1) * _BLOCK, self.n)
        for y in range(start, hi + 1):
            if exc[y] == target:
                return y
        for k in range(kb + 1, len(self._bmin)):
            if self._bmin[k] <= target:
                lo = k * _BLOCK + 1
                hi = min(lo + _BLOCK - 1, self.n)
                for y in range(lo, hi + 1):
                    if exc[y] == target:
                        return y
        raise ContractError(f"no matching excess {target} forward of position {start}")

    def _bwd_to(self, start: int, target: int) -> int:
        """Largest y <= start (possibly 0) with excess(y) == target."""
        exc = self._exc
        if start <= 0:
            if target == 0:
                return 0
            raise ContractError("no matching excess before the sequence start")
        kb = (start - 1) // _BLOCK
        lo = kb * _BLOCK + 1
        for y in range(start, lo - 1, -1):
            if exc[y] == target:
                return y
        for k in range(kb - 1, -1, -1):
            if self._bmin[k] <= target <= self._bmax[k]:
                lo = k * _BLOCK + 1
                hi = min(lo + _BLOCK - 1, self.n)
                for y in range(hi, lo - 1, -1):
                    if exc[y] == target:
                        return y
        if target == 0:
            return 0
        raise ContractError(f"no matching excess {target} backward of position {start}")

    # -- range minimum over the excess array ------------------------------------

    def rmq_excess(self, l: int, r: int, tiebreak: str = LEFTMOST) -> int:
        """Position in [l, r] with minimal excess; ties broken per ``tiebreak``."""
        if not 1 <= l <= r <= self.n:
            raise RangeError(f"range [{l}, {r}] invalid for length {self.n}")
        if tiebreak not in (LEFTMOST, RIGHTMOST):
            raise ContractError(f"unknown tiebreak {tiebreak!r}")
        left = tiebreak == LEFTMOST
        kb_l = (l - 1) // _BLOCK
        kb_r = (r - 1) // _BLOCK
        if kb_l == kb_r:
            return self._scan(l, r, left)
        best_v, best_p = self._scan_value(l, (kb_l + 1) * _BLOCK, left)
        if kb_r > kb_l + 1:
            mv, mk = self._block_min(kb_l + 1, kb_r - 1, left)
            if mv < best_v or (mv == best_v and not left):
                lo = mk * _BLOCK + 1
                best_v, best_p = self._scan_value(lo, lo + _BLOCK - 1, left)
        rv, rp = self._scan_value(kb_r * _BLOCK + 1, r, left)
        if rv < best_v or (rv == best_v and not left):
            best_v, best_p = rv, rp
        return best_p

    def _scan(self, l, r, left):
        return self._scan_value(l, r, left)[1]

    def _scan_value(self, l, r, left):
        exc = self._exc
        best_v = exc[l]
        best_p = l
        for y in range(l + 1, r + 1):
            v = exc[y]
            if v < best_v or (v == best_v and not left):
                best_v, best_p = v, y
        return best_v, best_p

    def _block_min(self, kl, kr, left):
        """(min value, block index attaining it) over blocks [kl, kr]."""
        span = kr - kl + 1
        j = span.bit_length() - 1
        row = self._table[j]
        lv, ll, lr = row[kl]
        rv, rl, rr = row[kr - (1 << j) + 1]
        if lv < rv:
            return lv, (ll if left else lr)
        if rv < lv:
            return rv, (rl if left else rr)
        return lv, (ll if left else rr)

    # -- weighted prefix select --------------------------------------------------

    def has_weights(self, side: str) -> bool:
        return self._weights.get(side) is not None

    def total_weight(self, side: str) -> int:
        positions, cum = self._weight_tables(side)
        return cum[-1] if cum else 0

    def weight_prefix(self, side: str, x: int) -> int:
        """Sum of side-weights at positions <= x (x may be 0..n)."""
        if not 0 <= x <= self.n:
            raise RangeError(f"position {x} outside 0..{self.n}")
        positions, cum = self._weight_tables(side)
        k = bisect_right(positions, x)
        return cum[k - 1] if k else 0

    def bpselect(self, side: str, budget: int) -> int:
        """Largest position whose side-weight prefix sum stays within budget."""
        return self.bpselect_with_count(side, budget)[0]

    def bpselect_with_count(self, side: str, budget: int):
        """As ``bpselect`` but also reports how many weighted positions fit.

        The count comes out of the same binary search, so callers that need
        the ordinal of the boundary weight pay for a single query.
        """
        if budget < 0:
            raise ContractError(f"budget must be non-negative, got {budget}")
        positions, cum = self._weight_tables(side)
        k = bisect_right(cum, budget)
        if k == len(positions):
            return self.n, k
        return positions[k] - 1, k

    def _weight_tables(self, side: str):
        if side not in self._weights:
            raise ContractError(f"unknown weight side {side!r}")
        tables = self._weights[side]
        if tables is None:
            raise ContractError(f"no {side} attached to this sequence")
        return tables

    def __eq__(self, other):
        return isinstance(other, ParenSeq) and self.base == other.base

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        s = self.to_string()
        if len(s) > 40:
            s = s[:37] + "..."
        return f"ParenSeq({s})"
