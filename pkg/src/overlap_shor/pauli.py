"""Phase-free Pauli operators and GF(2) linear algebra.

A Pauli operator on ``n`` qubits is stored as two ``n``-bit masks: bit ``i`` of
``x`` is set when qubit ``i`` carries an X factor, bit ``i`` of ``z`` when it
carries a Z factor, and both together mean Y. Global phases are dropped.

Matrices of Pauli operators use the symplectic row convention: the X half
(width ``n``) followed by the Z half (width ``n``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionError, PauliParseError

_TOKEN = re.compile(r"([IXYZ])(\d+)")


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError(f"qubit count must be nonnegative, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"bit masks do not fit in {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def from_bits(cls, x_bits: Sequence[int], z_bits: Sequence[int]) -> PauliOperator:
        if len(x_bits) != len(z_bits):
            raise DimensionError("x_bits and z_bits differ in length")
        return cls(len(x_bits), _to_mask(x_bits), _to_mask(z_bits))

    @classmethod
    def from_support(cls, n: int, letter: str, qubits) -> PauliOperator:
        """Pauli acting as ``letter`` on each qubit in ``qubits``."""
        mask = 0
        for q in qubits:
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} outside [0, {n})")
            mask |= 1 << q
        return cls(
            n,
            mask if letter in "XY" else 0,
            mask if letter in "YZ" else 0,
        )

    @classmethod
    def from_symplectic(cls, row: Sequence[int]) -> PauliOperator:
        if len(row) % 2:
            raise DimensionError("symplectic row must have even length")
        n = len(row) // 2
        return cls.from_bits(row[:n], row[n:])

    @property
    def x_bits(self) -> np.ndarray:
        return _to_bits(self.x, self.n)

    @property
    def z_bits(self) -> np.ndarray:
        return _to_bits(self.z, self.n)

    @property
    def support(self) -> int:
        return self.x | self.z

    def symplectic(self) -> np.ndarray:
        return np.concatenate([self.x_bits, self.z_bits])

    def symplectic_string(self) -> str:
        return "".join(map(str, self.symplectic()))

    def letter(self, q: int) -> str:
        bx, bz = (self.x >> q) & 1, (self.z >> q) & 1
        return "IXZY"[bx | (bz << 1)]

    def sort_key(self) -> tuple:
        """Ordering key: tokens ``(qubit, letter)`` in ascending qubit order."""
        return tuple((q, self.letter(q)) for q in _bits_of(self.support))

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return product(self, other)

    def __str__(self) -> str:
        return format_pauli(self)


def _to_mask(bits) -> int:
    mask = 0
    for i, b in enumerate(bits):
        if int(b) & 1:
            mask |= 1 << i
    return mask


def _to_bits(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=np.uint8)


def _bits_of(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _check_same_n(p: PauliOperator, q: PauliOperator):
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {q.n}")


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """0 if ``p`` and ``q`` commute, 1 otherwise."""
    _check_same_n(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) & 1


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


def product(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    _check_same_n(p, q)
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z)


def weight(p: PauliOperator) -> int:
    return p.support.bit_count()


def parse_pauli(text: str, n: int) -> PauliOperator:
    """Parse strings like ``"X0X1Z5"``; a lone ``"I"`` is the identity.

    Identity tokens with an index (``"I3"``) are accepted and ignored. A
    repeated index is an error unless it repeats the same letter.
    """
    text = text.strip()
    if text == "I":
        return PauliOperator(n)
    if not text:
        raise PauliParseError("empty Pauli string")
    pos = 0
    seen: dict[int, str] = {}
    x = z = 0
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise PauliParseError(f"unexpected text {text[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        letter, q = m.group(1), int(m.group(2))
        if q >= n:
            raise PauliParseError(f"qubit index {q} out of range for n={n}")
        if q in seen:
            if seen[q] != letter:
                raise PauliParseError(f"conflicting letters on qubit {q}")
            continue
        seen[q] = letter
        if letter in "XY":
            x |= 1 << q
        if letter in "YZ":
            z |= 1 << q
    if pos != len(text):
        raise PauliParseError(f"unexpected text {text[pos:]!r} in {text!r}")
    return PauliOperator(n, x, z)


def format_pauli(p: PauliOperator) -> str:
    if not p.support:
        return "I"
    return "".join(f"{p.letter(q)}{q}" for q in _bits_of(p.support))


def iter_paulis(n: int, w: int) -> Iterator[PauliOperator]:
    """All weight-``w`` Paulis on ``n`` qubits, in ``sort_key`` order."""
    def extend(start: int, left: int, x: int, z: int):
        if left == 0:
            yield PauliOperator(n, x, z)
            return
        for q in range(start, n - left + 1):
            bit = 1 << q
            yield from extend(q + 1, left - 1, x | bit, z)
            yield from extend(q + 1, left - 1, x | bit, z | bit)
            yield from extend(q + 1, left - 1, x, z | bit)

    yield from extend(0, w, 0, 0)


def iter_pure(n: int, w: int, letter: str) -> Iterator[PauliOperator]:
    """Weight-``w`` operators built from a single Pauli letter."""
    for qubits in combinations(range(n), w):
        yield PauliOperator.from_support(n, letter, qubits)


# ---------------------------------------------------------------------------
# GF(2) matrices (numpy uint8 arrays, one row per vector)


def as_binary(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.uint8)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise DimensionError("binary matrix must be two-dimensional")
    return a & 1


def gf2_rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns over GF(2)."""
    a = as_binary(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        ones = np.nonzero(a[:, c])[0]
        ones = ones[ones != r]
        if ones.size:
            a[ones] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def gf2_rank(m) -> int:
    return len(gf2_rref(m)[1])


def in_span(v, m) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``m``."""
    v = np.asarray(v, dtype=np.uint8).reshape(-1) & 1
    a = as_binary(m)
    if a.shape[0] == 0:
        return not v.any()
    if a.shape[1] != v.size:
        raise DimensionError(f"vector width {v.size} vs matrix width {a.shape[1]}")
    return gf2_rank(a) == gf2_rank(np.vstack([a, v]))


def gf2_nullspace(m) -> np.ndarray:
    """Basis (as rows) of ``{v : m v = 0}``."""
    a = as_binary(m)
    cols = a.shape[1]
    r, pivots = gf2_rref(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = r[row, f]
    return basis


def symplectic_matrix(paulis: Sequence[PauliOperator]) -> np.ndarray:
    """Stack operators as rows ``[x | z]``."""
    if not paulis:
        return np.zeros((0, 0), dtype=np.uint8)
    n = paulis[0].n
    for p in paulis:
        if p.n != n:
            raise DimensionError("operators act on different qubit counts")
    return np.array([p.symplectic() for p in paulis], dtype=np.uint8)
