"""Plain bit sequences with rank and select support.

Positions are 1-based throughout. Bits are packed into 64-bit words with
per-word cumulative counts, so ``rank`` costs one popcount and ``select`` a
binary search over the cumulative table plus one in-word scan. The tables are
derived from the bits alone; rebuilding a sequence always reproduces them.
"""

from bisect import bisect_left

from .errors import NotFoundError, RangeError

WORD = 64
_MASKS = [(1 << (r + 1)) - 1 for r in range(WORD)]


class BitSeq:
    """Immutable sequence of {0,1} symbols supporting rank/select."""

    __slots__ = ("n", "_words", "_cum1", "_cum0")

    def __init__(self, bits):
        if isinstance(bits, BitSeq):
            bits = list(bits.iter_bits())
        elif isinstance(bits, str):
            bits = [_bit_of_char(c, i) for i, c in enumerate(bits, start=1)]
        else:
            bits = list(bits)
        for i, b in enumerate(bits, start=1):
            if b not in (0, 1):
                raise RangeError(f"bit at position {i} is {b!r}, expected 0 or 1")
        self.n = len(bits)
        nwords = (self.n + WORD - 1) // WORD
        words = [0] * nwords
        for i, b in enumerate(bits):
            if b:
                words[i // WORD] |= 1 << (i % WORD)
        self._words = words
        cum1 = [0] * (nwords + 1)
        cum0 = [0] * (nwords + 1)
        remaining = self.n
        for w, word in enumerate(words):
            valid = WORD if remaining >= WORD else remaining
            ones = word.bit_count()
            cum1[w + 1] = cum1[w] + ones
            cum0[w + 1] = cum0[w] + (valid - ones)
            remaining -= valid
        self._cum1 = cum1
        self._cum0 = cum0

    def __len__(self):
        return self.n

    def bit(self, x: int) -> int:
        self._check_pos(x)
        return (self._words[(x - 1) // WORD] >> ((x - 1) % WORD)) & 1

    def iter_bits(self):
        for x in range(self.n):
            yield (self._words[x // WORD] >> (x % WORD)) & 1

    def count(self, s: int) -> int:
        """Total number of symbol ``s`` in the sequence."""
        return self._cum1[-1] if s else self._cum0[-1]

    def rank(self, x: int, s: int) -> int:
        """Number of occurrences of ``s`` at positions 1..x inclusive."""
        self._check_pos(x)
        w, r = divmod(x - 1, WORD)
        ones = self._cum1[w] + (self._words[w] & _MASKS[r]).bit_count()
        return ones if s else x - ones

    def select(self, i: int, s: int) -> int:
        """Position of the i-th occurrence of ``s`` (smallest such position)."""
        if i < 1:
            raise RangeError(f"occurrence index {i} must be >= 1")
        cum = self._cum1 if s else self._cum0
        if i > cum[-1]:
            raise NotFoundError(f"sequence holds only {cum[-1]} occurrences of {s}, asked for {i}")
        w = bisect_left(cum, i) - 1
        need = i - cum[w]
        word = self._words[w] if s else ~self._words[w] & ((1 << WORD) - 1)
        base = w * WORD
        while True:
            low = word & -word
            need -= 1
            if need == 0:
                return base + low.bit_length()
            word ^= low

    def table_bits(self) -> int:
        """Size of the acceleration tables, in bits (reported, not bounded)."""
        return (len(self._cum1) + len(self._cum0)) * WORD

    def _check_pos(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise RangeError(f"position {x} outside 1..{self.n}")

    def __eq__(self, other):
        return isinstance(other, BitSeq) and self.n == other.n and self._words == other._words

    def __hash__(self):
        return hash((self.n, tuple(self._words)))


def _bit_of_char(c: str, pos: int) -> int:
    if c in "(1":
        return 1
    if c in ")0":
        return 0
    raise RangeError(f"character {c!r} at position {pos} is not a bit or parenthesis")
