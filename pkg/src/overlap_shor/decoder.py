"""Syndrome extraction and two decoders.

``LookupDecoder`` is the exhaustive table: every syndrome reachable by an error
of weight at most ``w_max`` maps to the lightest such error. ``GroupedDecoder``
follows the group structure of the builders instead: each check group owns a
small sub-table indexed by its own syndrome bits, and bridge rows are
satisfied by choosing, per block, between the sub-table entry and its
complement within the block's local kernel.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Optional, Union

import numpy as np

from .builder import StabilizerCode
from .classical import LinearCode, classical_rule_count
from .errors import DimensionError, InvalidParameter, UnsupportedCode
from .pauli import PauliOperator, format_pauli, iter_paulis
from .verifier import _bits, _Classifier, _syndrome_mask, require_budget

NO_ERROR = "no_error"
CORRECTION = "correction"
DETECTED = "detected_unrecoverable"


@dataclass(frozen=True)
class Syndrome:
    """Bit ``i`` is set iff the error anticommutes with generator ``i``."""

    mask: int
    length: int

    @classmethod
    def from_string(cls, bits: str) -> Syndrome:
        return cls(sum(1 << i for i, b in enumerate(bits) if b == "1"), len(bits))

    def __str__(self):
        return _bits(self.mask, self.length)

    def __bool__(self):
        return bool(self.mask)


def extract_syndrome(code: StabilizerCode, e: PauliOperator) -> Syndrome:
    if e.n != code.n:
        raise DimensionError(f"error acts on {e.n} qubits, code has {code.n}")
    gens = code.generators
    return Syndrome(_syndrome_mask(gens, e), len(gens))


@dataclass(frozen=True)
class DecodeOutcome:
    kind: str
    correction: Optional[PauliOperator] = None


def _preference(p: PauliOperator) -> tuple:
    # Lightest first; among equal weight, fewer Y factors, then canonical order.
    return (p.support.bit_count(), (p.x & p.z).bit_count(), p.sort_key())


class LookupDecoder:
    def __init__(self, code: StabilizerCode, w_max: int, table: dict[int, PauliOperator]):
        self.code = code
        self.w_max = w_max
        self.table = table
        self.length = len(code.generators)

    @property
    def entry_count(self) -> int:
        return len(self.table)

    @property
    def descriptor(self) -> str:
        return f"lookup:{self.w_max}"

    def decode_mask(self, mask: int) -> DecodeOutcome:
        if mask == 0:
            return DecodeOutcome(NO_ERROR)
        c = self.table.get(mask)
        if c is None:
            return DecodeOutcome(DETECTED)
        return DecodeOutcome(CORRECTION, c)

    def decode(self, s: Syndrome) -> DecodeOutcome:
        _check_length(s, self.length)
        return self.decode_mask(s.mask)


def build_lookup(code: StabilizerCode, w_max: int) -> LookupDecoder:
    require_budget(code.n, w_max)
    gens = code.generators
    table: dict[int, PauliOperator] = {}
    for w in range(w_max + 1):
        for p in iter_paulis(code.n, w):
            s = _syndrome_mask(gens, p)
            best = table.get(s)
            if best is None or _preference(p) < _preference(best):
                table[s] = p
    return LookupDecoder(code, w_max, table)


def _check_length(s: Syndrome, length: int):
    if s.length != length:
        raise DimensionError(f"syndrome has {s.length} bits, decoder expects {length}")


class LayerDecoder:
    """Minimum-weight decoder for one classical layer, assembled group by group."""

    def __init__(self, code: LinearCode):
        self.code = code
        self.blocks = []  # (group, domain, subtable, kernel)
        self.bridges = []
        for g in code.groups:
            if g.domain is None:
                self.bridges.append(g)
                continue
            self.blocks.append((g, g.domain) + self._local_tables(g.rows, g.domain))
        covered = sorted(p for _, dom, *_ in self.blocks for p in dom)
        if covered != list(range(code.n)):
            raise UnsupportedCode(f"group domains of {code!r} do not partition its positions")
        self.bridge_rows = [r for g in self.bridges for r in g.rows]

    def _local_tables(self, rows, domain):
        h = self.code.checks[np.ix_(list(rows), list(domain))].astype(np.int64)
        table: dict[int, tuple] = {}
        kernel = []
        patterns = sorted(_cartesian((0, 1), repeat=len(domain)), key=lambda v: (sum(v), [-b for b in v]))
        for v in patterns:
            sig = int(((h @ np.array(v, dtype=np.int64)) % 2) @ (1 << np.arange(len(rows), dtype=np.int64))) if rows else 0
            if sig not in table:
                table[sig] = v
            if sig == 0:
                kernel.append(v)
        return table, kernel

    @property
    def subtable_sizes(self) -> list[tuple[str, int]]:
        return [(g.label, 2 ** len(g.rows)) for g in self.code.groups]

    @property
    def rule_count(self) -> int:
        return sum(size for _, size in self.subtable_sizes)

    def decode(self, bits: np.ndarray) -> Optional[np.ndarray]:
        """Lightest pattern with check syndrome ``bits``; None if unreachable."""
        n = self.code.n
        options = []
        for g, domain, table, kernel in self.blocks:
            sig = sum(int(bits[r]) << i for i, r in enumerate(g.rows))
            base = table.get(sig)
            if base is None:
                return None
            opts = []
            for kv in kernel:
                v = tuple(a ^ b for a, b in zip(base, kv))
                opts.append((sum(v), domain, v))
            options.append(opts)

        target = sum(int(bits[r]) << i for i, r in enumerate(self.bridge_rows))
        bridge_h = self.code.checks[self.bridge_rows].astype(np.int64) if self.bridge_rows else None

        def contribution(domain, v) -> int:
            if bridge_h is None:
                return 0
            col = (bridge_h[:, list(domain)] @ np.array(v, dtype=np.int64)) % 2
            return int(col @ (1 << np.arange(len(self.bridge_rows), dtype=np.int64)))

        # Dynamic programme over blocks keyed by the partial bridge syndrome.
        states: dict[int, tuple[int, list]] = {0: (0, [])}
        for opts in options:
            nxt: dict[int, tuple[int, list]] = {}
            for state, (cost, picks) in states.items():
                for wt, domain, v in opts:
                    key = state ^ contribution(domain, v)
                    cand = (cost + wt, picks + [(domain, v)])
                    if key not in nxt or cand[0] < nxt[key][0]:
                        nxt[key] = cand
            states = nxt
        if target not in states:
            return None
        out = np.zeros(n, dtype=np.uint8)
        for domain, v in states[target][1]:
            out[list(domain)] = v
        return out


class GroupedDecoder:
    def __init__(self, code: StabilizerCode):
        if code.layers is None:
            raise UnsupportedCode("grouped decoding needs a code built by this package's builders")
        self.code = code
        layers = code.layers
        self.inner = LayerDecoder(layers.inner)
        self.outer = LayerDecoder(layers.outer)
        self.length = len(code.generators)
        self.n_x = sum(len(g.generators) for g in code.x_groups)
        self._cache: dict[int, DecodeOutcome] = {}

    @property
    def descriptor(self) -> str:
        return "grouped"

    @property
    def rule_count(self) -> int:
        return self.inner.rule_count + self.outer.rule_count

    def subtables(self) -> list[dict]:
        out = [{"layer": "outer", "type": "X", "group": lbl, "entries": size} for lbl, size in self.outer.subtable_sizes]
        out += [{"layer": "inner", "type": "Z", "group": lbl, "entries": size} for lbl, size in self.inner.subtable_sizes]
        return out

    def decode_mask(self, mask: int) -> DecodeOutcome:
        if mask == 0:
            return DecodeOutcome(NO_ERROR)
        hit = self._cache.get(mask)
        if hit is not None:
            return hit
        bits = np.array([(mask >> i) & 1 for i in range(self.length)], dtype=np.uint8)
        u = self.outer.decode(bits[: self.n_x])
        e = self.inner.decode(bits[self.n_x:])
        if u is None or e is None:
            res = DecodeOutcome(DETECTED)
        else:
            zreps = self.code.layers.z_reps
            z = 0
            for j in np.nonzero(u)[0]:
                z |= 1 << zreps[j]
            x = 0
            for q in np.nonzero(e)[0]:
                x |= 1 << int(q)
            res = DecodeOutcome(CORRECTION, PauliOperator(self.code.n, x, z))
        self._cache[mask] = res
        return res

    def decode(self, s: Syndrome) -> DecodeOutcome:
        _check_length(s, self.length)
        return self.decode_mask(s.mask)


Decoder = Union[LookupDecoder, GroupedDecoder]


def build_grouped(code: StabilizerCode) -> GroupedDecoder:
    return GroupedDecoder(code)


def decode(dec: Decoder, s: Syndrome) -> DecodeOutcome:
    return dec.decode(s)


def make_decoder(code: StabilizerCode, spec: str) -> Decoder:
    """``"grouped"`` or ``"lookup:W"``."""
    if spec == "grouped":
        return build_grouped(code)
    if spec.startswith("lookup:"):
        return build_lookup(code, int(spec.split(":", 1)[1]))
    raise InvalidParameter(f"unknown decoder {spec!r}; use 'grouped' or 'lookup:W'")


# ---------------------------------------------------------------------------
# Rule accounting


def paper_rule_count(code: StabilizerCode) -> Optional[int]:
    """Rule count from the closed forms, composed layer by layer where needed."""
    p = code.construction["params"]
    tag = code.tag
    if tag == "shor":
        d = p["d"]
        return (1 + d) * 2 ** (d - 1)
    if tag == "outer":
        k, d, ell = p["k"], p["d"], p["ell"]
        return (k * (d - ell) + ell) * 2 ** (d - 1) + classical_rule_count(k, d, ell)
    if tag == "inner":
        t, d, ell = p["t"], p["d"], p["ell"]
        return t * 2 ** (d - 1) + classical_rule_count(t * d, d, ell)
    if tag == "double":
        k_o, d, ell = p["k_o"], p["d"], p["ell"]
        k_i = k_o * (d - ell) + ell
        return (k_i + k_o) * 2 ** (d - ell - 1) + 2**ell + 4
    return None


def rule_report(code: StabilizerCode) -> dict:
    dec = build_grouped(code)
    r = len(code.generators)
    return {
        "grouped": dec.rule_count,
        "paper_formula": paper_rule_count(code),
        "naive": 2**r,
        "naive_exponent": r,
        "sub_tables": dec.subtables(),
    }


def noerror_gain(c: int, c_prime: int, p: float) -> float:
    """``(1 - p) ** -(c_prime - c)``; ``inf`` when it overflows a float."""
    if not 0 <= p < 1:
        raise InvalidParameter(f"need 0 <= p < 1, got p={p}")
    if c > c_prime:
        raise InvalidParameter(f"need c <= c_prime, got {c} > {c_prime}")
    log_gain = -(c_prime - c) * math.log1p(-p)
    try:
        return math.exp(log_gain)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# Censuses and tables


@dataclass
class CensusReport:
    w: int
    corrected: int = 0
    detected_only: int = 0
    miscorrected: int = 0
    acts_trivially: int = 0
    decoder: str = ""
    records: list = field(default_factory=list, repr=False)

    @property
    def total(self) -> int:
        return self.corrected + self.detected_only + self.miscorrected + self.acts_trivially

    def to_dict(self) -> dict:
        return {
            "w": self.w,
            "corrected": self.corrected,
            "detected_only": self.detected_only,
            "miscorrected": self.miscorrected,
            "acts_trivially": self.acts_trivially,
            "decoder": self.decoder,
        }


def judge(clf: _Classifier, dec: Decoder, e: PauliOperator) -> str:
    """Outcome label for one injected error."""
    out = dec.decode_mask(clf.syndrome(e))
    if out.kind == NO_ERROR:
        kind = clf.classify(e).classification
        return "acts_trivially" if kind in ("identity", "stabilizer") else "miscorrected"
    if out.kind == DETECTED:
        return "detected_only"
    residual = e * out.correction
    kind = clf.classify(residual).classification
    if kind == "detectable":
        raise RuntimeError(f"correction {out.correction} does not reproduce the syndrome of {e}")
    return "corrected" if kind in ("identity", "stabilizer") else "miscorrected"


def correctability_census(code: StabilizerCode, dec: Decoder, w: int, keep_records: bool = False) -> CensusReport:
    require_budget(code.n, w)
    clf = _Classifier(code)
    report = CensusReport(w, decoder=dec.descriptor)
    for e in iter_paulis(code.n, w):
        label = judge(clf, dec, e)
        setattr(report, label, getattr(report, label) + 1)
        if keep_records:
            report.records.append((e, label))
    return report


def syndrome_table(code: StabilizerCode, weights) -> list[tuple[str, str]]:
    """``(error, syndrome)`` rows for every error of the given weights, canonical order."""
    rows = []
    for w in weights:
        require_budget(code.n, w)
        for e in iter_paulis(code.n, w):
            rows.append((format_pauli(e), str(extract_syndrome(code, e))))
    return rows


def table_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["error", "syndrome"])
    writer.writerows(rows)
    return buf.getvalue()
