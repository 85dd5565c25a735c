"""Content-addressed on-disk cache of minimal resolutions.

Entry layout (all integers little-endian)::

    magic    4 bytes   b"SZLB"
    version  1 byte    1
    length   8 bytes   payload size
    digest  32 bytes   sha256 of the payload
    payload

The payload packs the resolution step by step: generator degrees, the
columns of each differential as (position, exponents, coefficient)
triples, then the pending syzygy candidates so a cached resolution can
still be extended.  Any mismatch (magic, version, size, digest, or a
parse failure) makes the entry count as absent.
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile
from pathlib import Path

from .poly import MonomialOrder
from .resolution import GradedFreeResolution

MAGIC = b"SZLB"
VERSION = 1
_HEADER = struct.Struct("<4sBQ32s")
HEADER_SIZE = _HEADER.size


def cache_key(module, order: str, cap: int) -> str:
    text = "\n".join([module.canonical(), order, str(cap)])
    return hashlib.sha256(text.encode()).hexdigest()


class _Writer:
    def __init__(self):
        self.parts = []

    def i(self, v: int):
        self.parts.append(struct.pack("<q", v))

    def u(self, v: int):
        self.parts.append(struct.pack("<I", v))

    def bytes(self):
        return b"".join(self.parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def i(self) -> int:
        v = struct.unpack_from("<q", self.data, self.pos)[0]
        self.pos += 8
        return v

    def u(self) -> int:
        v = struct.unpack_from("<I", self.data, self.pos)[0]
        self.pos += 4
        return v


def _write_columns(w: _Writer, ring, cols, degs):
    r = ring.poly
    w.u(len(cols))
    for c, d in zip(cols, degs):
        w.i(d)
        w.u(len(c))
        for t in sorted(c):
            w.u(r.pos(t))
            for e in r.decode(t):
                w.u(e)
            w.u(c[t])


def _read_columns(rd: _Reader, ring):
    r = ring.poly
    n = rd.u()
    cols, degs = [], []
    for _ in range(n):
        degs.append(rd.i())
        k = rd.u()
        c = {}
        for _ in range(k):
            pos = rd.u()
            exps = [rd.u() for _ in range(r.nvars)]
            v = rd.u()
            if not 0 < v < r.p:
                raise ValueError("bad coefficient")
            c[r.term(pos, r.encode(exps))] = v
        cols.append(c)
    return cols, degs


def encode_resolution(res: GradedFreeResolution) -> bytes:
    ring = res.ring
    w = _Writer()
    w.u(len(res.ranks))
    for i, degs in enumerate(res.ranks):
        w.u(len(degs))
        for d in degs:
            w.i(d)
        cols = res.diffs[i]
        _write_columns(w, ring, cols, [0] * len(cols))
    if res._pending is None:
        w.u(0)
    else:
        w.u(1)
        _write_columns(w, ring, res._pending[0], res._pending[1])
    payload = w.bytes()
    return _HEADER.pack(MAGIC, VERSION, len(payload), hashlib.sha256(payload).digest()) + payload


def decode_resolution(blob: bytes, module) -> GradedFreeResolution:
    magic, version, size, digest = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC or version != VERSION:
        raise ValueError("bad header")
    payload = blob[_HEADER.size:]
    if len(payload) != size or hashlib.sha256(payload).digest() != digest:
        raise ValueError("corrupt payload")
    ring = module.ring
    rd = _Reader(payload)
    ranks, diffs = [], []
    for _ in range(rd.u()):
        ranks.append(tuple(rd.i() for _ in range(rd.u())))
        diffs.append(_read_columns(rd, ring)[0])
    pending = _read_columns(rd, ring) if rd.u() else None
    if rd.pos != len(payload):
        raise ValueError("trailing bytes")
    return GradedFreeResolution.from_data(module, ranks, diffs, pending)


class ResolutionCache:
    """Directory of resolution entries; the longest known resolution wins."""

    def __init__(self, directory):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.szl"

    def load(self, module, order: str, cap: int):
        path = self._path(cache_key(module, order, cap))
        try:
            blob = path.read_bytes()
        except OSError:
            return None
        try:
            return decode_resolution(blob, module)
        except (ValueError, struct.error, IndexError, KeyError):
            return None

    def store(self, res: GradedFreeResolution, order: str, cap: int):
        key = cache_key(res.module, order, cap)
        path = self._path(key)
        old = self.load(res.module, order, cap)
        if old is not None and old.length >= res.length:
            return
        blob = encode_resolution(res)
        # atomic replace keeps concurrent readers safe
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-")
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)

    def resolve(self, module, length: int, order: str = "grevlex", cap: int = 40) -> GradedFreeResolution:
        res = self.load(module, order, cap)
        if res is not None:
            self.hits += 1
            if res.length >= length:
                return res
            res.extend(length)
        else:
            self.misses += 1
            res = GradedFreeResolution(module, length)
        self.store(res, order, cap)
        return res
