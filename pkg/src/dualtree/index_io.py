"""Index blob serialization and the array / interval file formats.

Blob layout (everything little-endian):

    magic   4 bytes  b"DTR1"
    version u16      1
    kind    u16      1 = array index, 2 = interval index
    count   u32      number of sections
    section tag (4 ascii bytes), u64 payload length, payload

Array sections: VALS (u64 n + i64 values), BITS (u64 bit length + packed
words), RK64 (u64 word-level cumulative one-counts), EMIN (u64 block size +
i64 per-block excess minima), PMAP (u64 parent per position, 0 = root).
Interval indexes carry INTA/INTB (endpoints) plus the same derived sections
for the length heap and WOPN/WCLS weighted-position tables.

Loading rebuilds the structures from the raw inputs and verifies the stored
sampled tables match the rebuilt ones bit for bit, so a loaded index answers
exactly like a freshly built one.
"""

import struct

from .errors import ParseError, ValidationError
from .minheap import build_minheap
from .mliq import build_intervals
from .parens import CLOSE_WEIGHTS, OPEN_WEIGHTS

MAGIC = b"DTR1"
VERSION = 1
KIND_ARRAY = 1
KIND_INTERVALS = 2

_BLOCK = 64  # parens excess-block size, mirrored here for the EMIN section


# -- input files ---------------------------------------------------------------


def read_array_text(path):
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            for tok in line.split():
                try:
                    values.append(int(tok))
                except ValueError:
                    raise ValidationError(f"{path}:{lineno}: not an integer: {tok!r}") from None
    if not values:
        raise ValidationError(f"{path}: empty array file")
    return values


def write_array_text(path, values):
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(str(v) for v in values) + "\n")


def read_array_binary(path):
    with open(path, "rb") as fh:
        head = fh.read(8)
        if len(head) != 8:
            raise ValidationError(f"{path}: truncated length prefix")
        (n,) = struct.unpack("<Q", head)
        payload = fh.read(8 * n)
        if len(payload) != 8 * n:
            raise ValidationError(f"{path}: expected {n} values, file too short")
        if fh.read(1):
            raise ValidationError(f"{path}: trailing bytes after {n} values")
    if n == 0:
        raise ValidationError(f"{path}: empty array file")
    return list(struct.unpack(f"<{n}q", payload))


def write_array_binary(path, values):
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", len(values)))
        fh.write(struct.pack(f"<{len(values)}q", *values))


def read_intervals_text(path):
    pairs = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            toks = line.split()
            if not toks:
                continue
            if len(toks) != 2:
                raise ValidationError(f"{path}:{lineno}: expected 'a b', got {line.strip()!r}")
            try:
                a, b = int(toks[0]), int(toks[1])
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: not integers: {line.strip()!r}") from None
            if a < 0 or b < 0:
                raise ValidationError(f"{path}:{lineno}: endpoints must be non-negative")
            if a > b:
                raise ValidationError(f"{path}:{lineno}: left endpoint {a} exceeds right endpoint {b}")
            if pairs and a <= pairs[-1][0]:
                raise ValidationError(f"{path}:{lineno}: left endpoints not strictly increasing")
            if pairs and b <= pairs[-1][1]:
                raise ValidationError(f"{path}:{lineno}: right endpoints not strictly increasing")
            pairs.append((a, b))
    if not pairs:
        raise ValidationError(f"{path}: empty interval file")
    return pairs


# -- section plumbing ------------------------------------------------------------


def _pack_i64s(values):
    return struct.pack(f"<{len(values)}q", *values)


def _unpack_i64s(payload):
    return list(struct.unpack(f"<{len(payload) // 8}q", payload))


def _pack_u64s(values):
    return struct.pack(f"<{len(values)}Q", *values)


def _unpack_u64s(payload):
    return list(struct.unpack(f"<{len(payload) // 8}Q", payload))


def _bits_section(parenseq):
    return struct.pack("<Q", parenseq.n) + _pack_u64s(parenseq.base._words)


def _rank_section(parenseq):
    return _pack_u64s(parenseq.base._cum1)


def _emin_section(parenseq):
    return struct.pack("<Q", _BLOCK) + _pack_i64s(parenseq._bmin)


def _weight_section(parenseq, side):
    positions, cum = parenseq._weight_tables(side)
    out = [struct.pack("<Q", len(positions))]
    prev = 0
    for pos, c in zip(positions, cum):
        out.append(struct.pack("<Qq", pos, c - prev))
        prev = c
    return b"".join(out)


def _unpack_weights(payload):
    (count,) = struct.unpack_from("<Q", payload, 0)
    weights = {}
    off = 8
    for _ in range(count):
        pos, w = struct.unpack_from("<Qq", payload, off)
        weights[pos] = w
        off += 16
    return weights


def _write_blob(path, kind, sections):
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HHI", VERSION, kind, len(sections)))
        for tag, payload in sections:
            fh.write(tag.encode("ascii"))
            fh.write(struct.pack("<Q", len(payload)))
            fh.write(payload)


def _read_blob(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MAGIC:
        raise ParseError(f"{path}: bad magic {data[:4]!r}, expected {MAGIC!r}")
    version, kind, count = struct.unpack_from("<HHI", data, 4)
    if version != VERSION:
        raise ParseError(f"{path}: unsupported version {version}")
    sections = {}
    off = 12
    for _ in range(count):
        tag = data[off : off + 4].decode("ascii")
        (length,) = struct.unpack_from("<Q", data, off + 4)
        off += 12
        sections[tag] = data[off : off + length]
        off += length
    if off != len(data):
        raise ParseError(f"{path}: {len(data) - off} trailing bytes")
    return kind, sections


# -- array indexes -----------------------------------------------------------------


def save_array_index(path, h):
    parents = [0 if h.tree.parent(i) is None else h.tree.parent(i) for i in range(1, h.n + 1)]
    sections = [
        ("VALS", struct.pack("<Q", h.n) + _pack_i64s(h.values)),
        ("BITS", _bits_section(h.dfuds)),
        ("RK64", _rank_section(h.dfuds)),
        ("EMIN", _emin_section(h.dfuds)),
        ("PMAP", _pack_u64s(parents)),
    ]
    _write_blob(path, KIND_ARRAY, sections)
    return stats_for(h.dfuds, extra_values=h.n)


def load_array_index(path):
    kind, sections = _read_blob(path)
    if kind != KIND_ARRAY:
        raise ParseError(f"{path}: blob holds an interval index, not an array index")
    payload = sections["VALS"]
    (n,) = struct.unpack_from("<Q", payload, 0)
    values = _unpack_i64s(payload[8:])
    if len(values) != n:
        raise ParseError(f"{path}: VALS section promises {n} values, holds {len(values)}")
    h = build_minheap(values)
    _verify_derived(path, h.dfuds, sections)
    parents = _unpack_u64s(sections["PMAP"])
    rebuilt = [0 if h.tree.parent(i) is None else h.tree.parent(i) for i in range(1, h.n + 1)]
    if parents != rebuilt:
        raise ParseError(f"{path}: stored parent map does not match the rebuilt heap")
    return h


# -- interval indexes ----------------------------------------------------------------


def save_interval_index(path, s):
    sections = [
        ("INTA", _pack_i64s(s.a)),
        ("INTB", _pack_i64s(s.b)),
        ("BITS", _bits_section(s.heap.dfuds)),
        ("RK64", _rank_section(s.heap.dfuds)),
        ("EMIN", _emin_section(s.heap.dfuds)),
        ("WOPN", _weight_section(s.bp_open, OPEN_WEIGHTS)),
        ("WCLS", _weight_section(s.bp_close, CLOSE_WEIGHTS)),
    ]
    _write_blob(path, KIND_INTERVALS, sections)
    return stats_for(s.heap.dfuds, extra_values=2 * s.n)


def load_interval_index(path):
    kind, sections = _read_blob(path)
    if kind != KIND_INTERVALS:
        raise ParseError(f"{path}: blob holds an array index, not an interval index")
    a = _unpack_i64s(sections["INTA"])
    b = _unpack_i64s(sections["INTB"])
    s = build_intervals(list(zip(a, b)))
    _verify_derived(path, s.heap.dfuds, sections)
    stored_open = _unpack_weights(sections["WOPN"])
    if stored_open != _cum_to_weights(s.bp_open, OPEN_WEIGHTS):
        raise ParseError(f"{path}: stored open weights do not match the rebuilt index")
    stored_close = _unpack_weights(sections["WCLS"])
    if stored_close != _cum_to_weights(s.bp_close, CLOSE_WEIGHTS):
        raise ParseError(f"{path}: stored close weights do not match the rebuilt index")
    return s


def _cum_to_weights(parenseq, side):
    positions, cum = parenseq._weight_tables(side)
    out = {}
    prev = 0
    for pos, c in zip(positions, cum):
        out[pos] = c - prev
        prev = c
    return out


def _verify_derived(path, parenseq, sections):
    if sections["BITS"] != _bits_section(parenseq):
        raise ParseError(f"{path}: stored bits do not match the rebuilt structure")
    if sections["RK64"] != _rank_section(parenseq):
        raise ParseError(f"{path}: stored rank table does not match the rebuilt structure")
    if sections["EMIN"] != _emin_section(parenseq):
        raise ParseError(f"{path}: stored excess minima do not match the rebuilt structure")


def stats_for(parenseq, extra_values=0):
    """Bit counts reported after a build."""
    return {
        "raw_bits": parenseq.n,
        "rank_table_bits": parenseq.base.table_bits(),
        "excess_block_bits": 64 * (len(parenseq._bmin) + len(parenseq._bmax)),
        "sparse_table_bits": 64 * 3 * sum(len(row) for row in parenseq._table),
        "value_words": extra_values,
    }
