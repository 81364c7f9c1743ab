"""Repetition and overlapped-repetition classical codes.

The overlapped code glues ``k`` copies of the ``[d, 1, d]`` repetition code
together on ``ell`` shared bits. Bit layout: unshared block ``i`` occupies
``[i*(d-ell), (i+1)*(d-ell))`` and the shared block is the last ``ell`` bits.
Message bit ``m_i`` fills unshared block ``i``; every shared bit holds the
parity ``m_0 ^ ... ^ m_{k-1}``.

Check rows come in labelled groups: adjacent pairs inside each unshared
block, adjacent pairs inside the shared block, and a single bridge row tying
the last bit of every unshared block to the first shared bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import CapacityError, DimensionError, InvalidParameter
from .pauli import as_binary

MAX_ENUMERATED_K = 20


@dataclass(frozen=True)
class OverlapLayout:
    k: int
    d: int
    ell: int

    @property
    def n(self) -> int:
        return self.k * (self.d - self.ell) + self.ell

    @property
    def unshared_ranges(self) -> tuple[range, ...]:
        w = self.d - self.ell
        return tuple(range(i * w, (i + 1) * w) for i in range(self.k))

    @property
    def shared_range(self) -> range:
        return range(self.n - self.ell, self.n)


@dataclass(frozen=True)
class CheckGroup:
    """A labelled set of check rows.

    ``domain`` is the set of positions the group's rows act on and may be
    empty-rowed (a block of one bit has no internal pair checks). Bridge
    groups have ``domain=None``; they straddle blocks.
    """

    label: str
    kind: str  # "repetition", "unshared", "shared" or "bridge"
    rows: tuple[int, ...]
    domain: Optional[tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class LinearCode:
    n: int
    k: int
    claimed_distance: int
    generator: np.ndarray
    checks: np.ndarray
    groups: tuple[CheckGroup, ...]
    info_positions: tuple[int, ...]
    layout: Optional[OverlapLayout] = None
    name: str = field(default="")

    def subtable_sizes(self) -> dict[str, int]:
        """Entries needed by a per-group lookup: ``2**len(rows)`` per group."""
        return {g.label: 2 ** len(g.rows) for g in self.groups}

    def grouped_rule_count(self) -> int:
        return sum(self.subtable_sizes().values())

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}, {self.claimed_distance}]{' ' + self.name if self.name else ''})"


def _pair_rows(n: int, positions: Sequence[int]) -> list[np.ndarray]:
    rows = []
    for a, b in zip(positions[:-1], positions[1:]):
        r = np.zeros(n, dtype=np.uint8)
        r[[a, b]] = 1
        rows.append(r)
    return rows


def _stack(rows, n) -> np.ndarray:
    return np.array(rows, dtype=np.uint8).reshape(len(rows), n)


def build_repetition(d: int, hub: bool = False) -> LinearCode:
    """The ``[d, 1, d]`` repetition code.

    Checks are adjacent pairs ``(j, j+1)``; with ``hub=True`` they are
    ``(0, j)`` instead, the form the Shor code uses for its outer layer.
    """
    if d < 2:
        raise InvalidParameter(f"repetition code needs d >= 2, got d={d}")
    if hub:
        rows = []
        for j in range(1, d):
            r = np.zeros(d, dtype=np.uint8)
            r[[0, j]] = 1
            rows.append(r)
    else:
        rows = _pair_rows(d, list(range(d)))
    group = CheckGroup("repetition", "repetition", tuple(range(d - 1)), tuple(range(d)))
    return LinearCode(
        n=d,
        k=1,
        claimed_distance=d,
        generator=np.ones((1, d), dtype=np.uint8),
        checks=_stack(rows, d),
        groups=(group,),
        info_positions=(0,),
        name="repetition-hub" if hub else "repetition",
    )


def validate_overlap(k: int, d: int, ell: int) -> None:
    if d < 2:
        raise InvalidParameter(f"need d >= 2, got d={d}")
    if k < 1:
        raise InvalidParameter(f"need k >= 1, got k={k}")
    if not 1 <= ell <= d // 2:
        raise InvalidParameter(f"need 1 <= ell <= floor(d/2) = {d // 2}, got ell={ell}")


def build_overlapped(k: int, d: int, ell: int) -> LinearCode:
    """The ``[k(d-ell)+ell, k, d]`` overlapped repetition code."""
    validate_overlap(k, d, ell)
    layout = OverlapLayout(k, d, ell)
    n = layout.n

    rows: list[np.ndarray] = []
    groups: list[CheckGroup] = []
    for i, block in enumerate(layout.unshared_ranges):
        start = len(rows)
        rows += _pair_rows(n, list(block))
        groups.append(CheckGroup(f"unshared-{i}", "unshared", tuple(range(start, len(rows))), tuple(block)))
    start = len(rows)
    rows += _pair_rows(n, list(layout.shared_range))
    groups.append(CheckGroup("shared", "shared", tuple(range(start, len(rows))), tuple(layout.shared_range)))

    bridge = np.zeros(n, dtype=np.uint8)
    for block in layout.unshared_ranges:
        bridge[block[-1]] = 1
    bridge[layout.shared_range[0]] = 1
    rows.append(bridge)
    groups.append(CheckGroup("bridge", "bridge", (len(rows) - 1,), None))

    generator = np.zeros((k, n), dtype=np.uint8)
    for i, block in enumerate(layout.unshared_ranges):
        generator[i, list(block)] = 1
        generator[i, list(layout.shared_range)] = 1

    return LinearCode(
        n=n,
        k=k,
        claimed_distance=d,
        generator=generator,
        checks=_stack(rows, n),
        groups=tuple(groups),
        info_positions=tuple(block[0] for block in layout.unshared_ranges),
        layout=layout,
        name=f"overlapped(k={k}, d={d}, ell={ell})",
    )


def direct_sum(codes: Sequence[LinearCode]) -> LinearCode:
    """Side-by-side copies; groups and positions are shifted and relabelled."""
    n = sum(c.n for c in codes)
    k = sum(c.k for c in codes)
    generator = np.zeros((k, n), dtype=np.uint8)
    checks = np.zeros((n - k, n), dtype=np.uint8)
    groups, info = [], []
    col = row_g = row_h = 0
    for b, c in enumerate(codes):
        generator[row_g:row_g + c.k, col:col + c.n] = c.generator
        checks[row_h:row_h + c.n - c.k, col:col + c.n] = c.checks
        for g in c.groups:
            groups.append(
                CheckGroup(
                    f"{g.label}-{b}" if len(codes) > 1 else g.label,
                    g.kind,
                    tuple(r + row_h for r in g.rows),
                    None if g.domain is None else tuple(p + col for p in g.domain),
                )
            )
        info += [p + col for p in c.info_positions]
        col += c.n
        row_g += c.k
        row_h += c.n - c.k
    return LinearCode(
        n=n,
        k=k,
        claimed_distance=min(c.claimed_distance for c in codes),
        generator=generator,
        checks=checks,
        groups=tuple(groups),
        info_positions=tuple(info),
        name=f"{len(codes)} x {codes[0].name}" if codes else "empty",
    )


def encode(code: LinearCode, message) -> np.ndarray:
    m = np.asarray(message, dtype=np.uint8).reshape(-1)
    if m.size != code.k:
        raise DimensionError(f"message has {m.size} bits, code encodes {code.k}")
    return (m.astype(np.int64) @ code.generator) % 2


def check_syndrome(code: LinearCode, word) -> np.ndarray:
    w = np.asarray(word, dtype=np.uint8).reshape(-1)
    if w.size != code.n:
        raise DimensionError(f"word has {w.size} bits, code length is {code.n}")
    return (code.checks.astype(np.int64) @ w) % 2


def is_codeword(code: LinearCode, word) -> bool:
    return not check_syndrome(code, word).any()


def all_codewords(code: LinearCode) -> np.ndarray:
    if code.k > MAX_ENUMERATED_K:
        raise CapacityError(
            f"k={code.k} exceeds the exhaustive limit of {MAX_ENUMERATED_K} message bits"
        )
    msgs = (np.arange(2**code.k)[:, None] >> np.arange(code.k)) & 1
    return (msgs @ code.generator.astype(np.int64)) % 2


def min_distance(code: LinearCode) -> int:
    """Minimum weight over the ``2**k - 1`` nonzero codewords."""
    words = all_codewords(code)
    return int(words[1:].sum(axis=1).min())


def classical_rule_count(k: int, d: int, ell: int) -> int:
    validate_overlap(k, d, ell)
    return k * 2 ** (d - ell - 1) + 2 ** (ell - 1) + 2


def naive_table_size(k: int, d: int, ell: int) -> int:
    """Exponent of the full syndrome table size (the number of checks)."""
    validate_overlap(k, d, ell)
    return k * (d - ell - 1) + ell


def _bitstr(row) -> str:
    return "".join(str(int(b)) for b in row)


def code_to_dict(code: LinearCode) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "claimed_distance": code.claimed_distance,
        "generator_rows": [_bitstr(r) for r in code.generator],
        "check_rows": [_bitstr(r) for r in code.checks],
        "groups": [{"label": g.label, "row_indices": list(g.rows)} for g in code.groups],
    }


def code_from_dict(data: dict) -> LinearCode:
    """Inverse of :func:`code_to_dict`; layout and group domains are not stored."""
    n, k = int(data["n"]), int(data["k"])
    gen = as_binary([[int(c) for c in s] for s in data["generator_rows"]]).reshape(k, n)
    chk = as_binary([[int(c) for c in s] for s in data["check_rows"]]).reshape(-1, n)
    groups = tuple(
        CheckGroup(g["label"], g["label"].split("-")[0], tuple(g["row_indices"]), None)
        for g in data["groups"]
    )
    info = []
    for row in gen:
        others = gen.sum(axis=0) - row
        hits = np.nonzero((row == 1) & (others == 0))[0]
        info.append(int(hits[0]) if hits.size else -1)
    return LinearCode(n, k, int(data["claimed_distance"]), gen, chk, groups, tuple(info))
