"""Binary container for built oracles.

Layout: magic ``FTORACL`` plus a version byte, then sections of
``tag (4 bytes) | length (uint64 LE) | payload``.  Array payloads are a one
byte type code (``i`` int64, ``f`` float64) followed by little-endian data,
so floats round-trip bit for bit.  Query-side indexes are rebuilt on load.
"""
from __future__ import annotations

import os
import struct
from typing import Optional, Union

import numpy as np

from .errors import ContainerError
from .graph import Fingerprint, Graph
from .oracle2 import Oracle2
from .oracle_eps import OracleEps, bucket_limit, check_epsilon
from .spt import Spt

MAGIC = b"FTORACL"
VERSION = 1
_META = struct.Struct("<4sdqqqQq")  # kind, epsilon, n, m, source, checksum, k
_HEAD = struct.Struct("<4sQ")

Oracle = Union[Oracle2, OracleEps]


def _array(a: np.ndarray) -> bytes:
    if a.dtype.kind in "iu":
        return b"i" + np.ascontiguousarray(a, dtype="<i8").tobytes()
    return b"f" + np.ascontiguousarray(a, dtype="<f8").tobytes()


def serialize(o: Oracle) -> bytes:
    if isinstance(o, Oracle2):
        kind, eps, k = b"TWO\0", 0.0, 0
        extra = {b"DETR": o.detour, b"LABL": o.labels}
    elif isinstance(o, OracleEps):
        kind, eps, k = b"EPS\0", o.epsilon, o.k
        extra = {b"DETR": o.detour, b"ENTV": o.ent_vertex, b"ENTR": o.ent_rank,
                 b"ENTD": o.ent_dist, b"ENTB": o.ent_bucket}
    else:
        raise TypeError(f"cannot serialize {type(o).__name__}")
    s, fp = o.spt, o.fingerprint
    sections = {b"META": _META.pack(kind, eps, fp.n, fp.m, fp.source, fp.checksum, k),
                b"PARN": _array(s.parent), b"DIST": _array(s.dist), b"PEDG": _array(s.parent_edge),
                b"PWGT": _array(s.parent_weight), b"PREO": _array(s.pre_in),
                b"KEYS": _array(o.edge_keys)}
    sections.update({tag: _array(a) for tag, a in extra.items()})
    out = [MAGIC, bytes([VERSION])]
    for tag, payload in sections.items():
        out.append(_HEAD.pack(tag, len(payload)))
        out.append(payload)
    return b"".join(out)


def _sections(data: bytes) -> dict[bytes, bytes]:
    if len(data) < len(MAGIC) + 1 or data[:len(MAGIC)] != MAGIC:
        raise ContainerError("not an oracle container (bad magic)")
    if data[len(MAGIC)] != VERSION:
        raise ContainerError(f"unsupported container version {data[len(MAGIC)]}")
    pos = len(MAGIC) + 1
    out = {}
    while pos < len(data):
        if pos + _HEAD.size > len(data):
            raise ContainerError("truncated section header")
        tag, length = _HEAD.unpack_from(data, pos)
        pos += _HEAD.size
        if pos + length > len(data):
            raise ContainerError(f"truncated section {tag!r}")
        if tag in out:
            raise ContainerError(f"duplicate section {tag!r}")
        out[tag] = data[pos:pos + length]
        pos += length
    return out


def _get_array(sec: dict, tag: bytes, length: Optional[int] = None) -> np.ndarray:
    if tag not in sec:
        raise ContainerError(f"missing section {tag.decode()}")
    raw = sec[tag]
    if not raw or raw[:1] not in (b"i", b"f") or (len(raw) - 1) % 8:
        raise ContainerError(f"malformed array in section {tag.decode()}")
    a = np.frombuffer(raw, dtype="<i8" if raw[:1] == b"i" else "<f8", offset=1)
    a = a.astype(np.int64 if raw[:1] == b"i" else np.float64)
    if length is not None and a.shape[0] != length:
        raise ContainerError(f"section {tag.decode()} has {a.shape[0]} entries, expected {length}")
    return a


def deserialize(data: bytes) -> Oracle:
    sec = _sections(data)
    if b"META" not in sec or len(sec[b"META"]) != _META.size:
        raise ContainerError("missing or malformed META section")
    kind, eps, n, m, source, checksum, k = _META.unpack(sec[b"META"])
    if n < 1 or m < 0 or not 0 <= source < n:
        raise ContainerError("inconsistent graph header")
    fp = Fingerprint(n, m, source, checksum)
    parent = _get_array(sec, b"PARN", n)
    if np.any((parent < -1) | (parent >= n)):
        raise ContainerError("parent array out of range")
    try:
        spt = Spt.from_parent(parent, _get_array(sec, b"DIST", n), _get_array(sec, b"PEDG", n),
                              _get_array(sec, b"PWGT", n))
    except Exception as exc:
        raise ContainerError(f"stored tree is invalid: {exc}") from None
    if spt.source != source or not np.array_equal(spt.pre_in, _get_array(sec, b"PREO", n)):
        raise ContainerError("stored preorder does not match the tree")
    keys = _get_array(sec, b"KEYS", m)
    if m > 1 and np.any(keys[1:] <= keys[:-1]):
        raise ContainerError("edge keys not sorted")
    detour = _get_array(sec, b"DETR", n - 1)
    if kind == b"TWO\0":
        labels = _get_array(sec, b"LABL", n)
        return Oracle2(spt, detour, labels, keys, fp)
    if kind == b"EPS\0":
        try:
            eps = check_epsilon(eps)
        except ValueError as exc:
            raise ContainerError(str(exc)) from None
        if k != bucket_limit(eps):
            raise ContainerError("bucket count does not match epsilon")
        ent_v = _get_array(sec, b"ENTV")
        cnt = ent_v.shape[0]
        ent_r = _get_array(sec, b"ENTR", cnt)
        ent_d = _get_array(sec, b"ENTD", cnt)
        ent_b = _get_array(sec, b"ENTB", cnt)
        if cnt and (ent_v.min() < 0 or ent_v.max() >= n or ent_b.min() < 0 or ent_b.max() > k):
            raise ContainerError("landmark entries out of range")
        key = ent_b * n + ent_v
        if cnt > 1 and np.any(key[1:] <= key[:-1]):
            raise ContainerError("landmark entries not strictly sorted by (bucket, vertex)")
        return OracleEps(eps, k, spt, detour, ent_v, ent_r, ent_d, ent_b, keys, fp)
    raise ContainerError(f"unknown oracle kind {kind!r}")


def check_fingerprint(o: Oracle, g: Graph) -> None:
    if tuple(o.fingerprint) != tuple(g.fingerprint):
        raise ContainerError("graph fingerprint does not match the oracle")


def save(o: Oracle, path: Union[str, os.PathLike]) -> int:
    data = serialize(o)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def load(path: Union[str, os.PathLike], graph: Optional[Graph] = None) -> Oracle:
    with open(path, "rb") as fh:
        o = deserialize(fh.read())
    if graph is not None:
        check_fingerprint(o, graph)
    return o
