"""Quantum Shor-type codes from an inner and an outer classical code.

Every construction here is the same two-layer recipe:

* the inner classical code acts on the physical qubits; its check rows become
  Z-type generators and its codewords ``c_j`` give the inner logical X
  operators ``X^{c_j}``;
* the outer classical code acts on the inner logical qubits; each outer check
  row ``h`` becomes the X-type generator ``prod_{j in h} X^{c_j}``.

Shor's code uses repetition codes in both layers. The outer, inner and
double variants swap in the overlapped repetition code on one or both
layers. Generators are ordered X groups first, then Z groups.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import classical
from .classical import LinearCode, build_overlapped, build_repetition, direct_sum
from .errors import InvalidParameter
from .pauli import PauliOperator, format_pauli, parse_pauli, symplectic_matrix

SCHEMA = "overlap-shor/1"
TAGS = ("shor", "outer", "inner", "double")

_X_ROLES = {"repetition": "outer-pair", "unshared": "outer-pair", "shared": "outer-pair", "bridge": "outer-bridge"}
_Z_ROLES = {"repetition": "inner-pair", "unshared": "inner-pair", "shared": "shared-pair", "bridge": "inner-bridge"}


@dataclass(frozen=True)
class StabilizerGroupSpec:
    label: str
    role: str
    pauli_type: str
    generators: tuple[PauliOperator, ...]


@dataclass(frozen=True)
class Concatenation:
    """Layer metadata kept by the builders for the grouped decoder."""

    inner: LinearCode
    outer: LinearCode
    inner_logical_x: tuple[int, ...]  # X-support mask of each inner logical qubit
    z_reps: tuple[int, ...]  # qubit carrying the inner logical Z of each inner logical qubit


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    n: int
    k: int
    claimed_distance: int
    x_groups: tuple[StabilizerGroupSpec, ...]
    z_groups: tuple[StabilizerGroupSpec, ...]
    logical_x: tuple[PauliOperator, ...]
    logical_z: tuple[PauliOperator, ...]
    construction: dict = field(default_factory=lambda: {"tag": "custom", "params": {}})
    layers: Optional[Concatenation] = None

    @property
    def groups(self) -> tuple[StabilizerGroupSpec, ...]:
        return self.x_groups + self.z_groups

    @property
    def generators(self) -> list[PauliOperator]:
        return [g for grp in self.groups for g in grp.generators]

    @property
    def generator_groups(self) -> list[StabilizerGroupSpec]:
        """Group of each generator, aligned with :attr:`generators`."""
        return [grp for grp in self.groups for _ in grp.generators]

    def generator_matrix(self) -> np.ndarray:
        return symplectic_matrix(self.generators)

    @property
    def tag(self) -> str:
        return self.construction["tag"]

    def __repr__(self):
        return f"StabilizerCode([[{self.n}, {self.k}, {self.claimed_distance}]] {self.tag} {self.construction['params']})"


def _mask(row) -> int:
    m = 0
    for i in np.nonzero(row)[0]:
        m |= 1 << int(i)
    return m


def concatenate(inner: LinearCode, outer: LinearCode, construction: dict, claimed_distance: int) -> StabilizerCode:
    if outer.n != inner.k:
        raise InvalidParameter(f"outer length {outer.n} must equal inner dimension {inner.k}")
    n = inner.n
    inner_x = tuple(_mask(r) for r in inner.generator)
    z_reps = inner.info_positions

    x_groups = []
    for g in outer.groups:
        gens = []
        for r in g.rows:
            m = 0
            for j in np.nonzero(outer.checks[r])[0]:
                m ^= inner_x[j]
            gens.append(PauliOperator(n, x=m))
        x_groups.append(StabilizerGroupSpec(f"outer:{g.label}", _X_ROLES[g.kind], "X", tuple(gens)))

    z_groups = []
    for g in inner.groups:
        gens = tuple(PauliOperator(n, z=_mask(inner.checks[r])) for r in g.rows)
        z_groups.append(StabilizerGroupSpec(f"inner:{g.label}", _Z_ROLES[g.kind], "Z", gens))

    logical_x, logical_z = [], []
    for s in range(outer.k):
        logical_x.append(PauliOperator(n, x=inner_x[outer.info_positions[s]]))
        zm = 0
        for j in np.nonzero(outer.generator[s])[0]:
            zm |= 1 << z_reps[j]
        logical_z.append(PauliOperator(n, z=zm))

    return StabilizerCode(
        n=n,
        k=outer.k,
        claimed_distance=claimed_distance,
        x_groups=tuple(x_groups),
        z_groups=tuple(z_groups),
        logical_x=tuple(logical_x),
        logical_z=tuple(logical_z),
        construction=construction,
        layers=Concatenation(inner, outer, inner_x, tuple(z_reps)),
    )


def build_shor(d: int) -> StabilizerCode:
    """The ``[[d^2, 1, d]]`` Shor code; for ``d=3`` generators are g0..g7 in order."""
    if d < 2:
        raise InvalidParameter(f"need d >= 2, got d={d}")
    inner = direct_sum([build_repetition(d)] * d)
    outer = build_repetition(d, hub=True)
    return concatenate(inner, outer, {"tag": "shor", "params": {"d": d}}, d)


def build_outer_overlap(k: int, d: int, ell: int) -> StabilizerCode:
    outer = build_overlapped(k, d, ell)
    inner = direct_sum([build_repetition(d)] * outer.n)
    return concatenate(inner, outer, {"tag": "outer", "params": {"k": k, "d": d, "ell": ell}}, d)


def build_inner_overlap(t: int, d: int, ell: int) -> StabilizerCode:
    if t < 1:
        raise InvalidParameter(f"need t >= 1, got t={t}")
    inner = build_overlapped(t * d, d, ell)
    outer = direct_sum([build_repetition(d)] * t)
    return concatenate(inner, outer, {"tag": "inner", "params": {"t": t, "d": d, "ell": ell}}, d)


def build_double_overlap(k_o: int, d: int, ell: int) -> StabilizerCode:
    outer = build_overlapped(k_o, d, ell)
    inner = build_overlapped(outer.n, d, ell)
    return concatenate(inner, outer, {"tag": "double", "params": {"k_o": k_o, "d": d, "ell": ell}}, d)


def build(tag: str, **params) -> StabilizerCode:
    """Dispatch on construction tag: shor(d), outer(k,d,ell), inner(t,d,ell), double(k_o,d,ell)."""
    try:
        if tag == "shor":
            return build_shor(params["d"])
        if tag == "outer":
            return build_outer_overlap(params["k"], params["d"], params["ell"])
        if tag == "inner":
            return build_inner_overlap(params["t"], params["d"], params["ell"])
        if tag == "double":
            return build_double_overlap(params["k_o"], params["d"], params["ell"])
    except KeyError as exc:
        raise InvalidParameter(f"construction {tag!r} needs parameter {exc.args[0]!r}") from None
    raise InvalidParameter(f"unknown construction {tag!r}; expected one of {TAGS}")


def predicted_parameters(tag: str, **params) -> tuple[int, int, int]:
    """Closed-form ``(n, k, d)`` for each construction."""
    d = params.get("d")
    if tag == "shor":
        if d is None or d < 2:
            raise InvalidParameter(f"need d >= 2, got d={d}")
        return d * d, 1, d
    ell = params.get("ell")
    if tag == "outer":
        k = params["k"]
        classical.validate_overlap(k, d, ell)
        return k * d * (d - ell) + d * ell, k, d
    if tag == "inner":
        t = params["t"]
        if t < 1:
            raise InvalidParameter(f"need t >= 1, got t={t}")
        classical.validate_overlap(t * d, d, ell)
        return t * d * (d - ell) + ell, t, d
    if tag == "double":
        k_o = params["k_o"]
        classical.validate_overlap(k_o, d, ell)
        return k_o * (d - ell) ** 2 + ell * (d - ell + 1), k_o, d
    raise InvalidParameter(f"unknown construction {tag!r}")


def weight_census(code: StabilizerCode) -> dict[str, dict[int, int]]:
    """Histogram of generator weights, split by Pauli type."""
    out = {"X": Counter(), "Z": Counter()}
    for grp in code.groups:
        for g in grp.generators:
            out[grp.pauli_type][g.support.bit_count()] += 1
    return {t: dict(sorted(c.items())) for t, c in out.items()}


def asymptotic_rate(tag: str, d: int, ell: int = 0) -> Fraction:
    """Limit of k/n as the number of logical qubits grows."""
    if tag == "shor":
        return Fraction(1, d * d)
    classical.validate_overlap(1, d, ell)
    if tag in ("outer", "inner"):
        return Fraction(1, d * (d - ell))
    if tag == "double":
        return Fraction(1, (d - ell) ** 2)
    raise InvalidParameter(f"unknown construction {tag!r}")


def rate_ratio_vs_shor(tag: str, d: int, ell: int = 0) -> Fraction:
    return asymptotic_rate(tag, d, ell) / Fraction(1, d * d)


# ---------------------------------------------------------------------------
# JSON


def code_to_dict(code: StabilizerCode) -> dict:
    gens = []
    for i, (g, grp) in enumerate(zip(code.generators, code.generator_groups)):
        gens.append({"label": f"g{i}", "group": grp.label, "role": grp.role, "type": grp.pauli_type, "pauli": format_pauli(g)})
    return {
        "schema": SCHEMA,
        "construction": {"tag": code.tag, "params": dict(code.construction["params"])},
        "n": code.n,
        "k": code.k,
        "claimed_distance": code.claimed_distance,
        "generators": gens,
        "logical_x": [format_pauli(p) for p in code.logical_x],
        "logical_z": [format_pauli(p) for p in code.logical_z],
    }


def code_from_dict(data: dict) -> StabilizerCode:
    """Load a code; known constructions are rebuilt so layer metadata is restored."""
    if data.get("schema", SCHEMA) != SCHEMA:
        raise InvalidParameter(f"unsupported schema {data.get('schema')!r}")
    n = int(data["n"])
    cons = data.get("construction") or {"tag": "custom", "params": {}}
    gens = [parse_pauli(g["pauli"], n) for g in data["generators"]]
    if cons["tag"] in TAGS:
        code = build(cons["tag"], **cons["params"])
        if code.n != n or [format_pauli(g) for g in code.generators] != [format_pauli(g) for g in gens]:
            raise InvalidParameter("generators in file do not match the named construction")
        return code

    groups: dict[str, list] = {}
    meta = {}
    for g, spec in zip(gens, data["generators"]):
        label = spec.get("group", spec.get("label", "custom"))
        groups.setdefault(label, []).append(g)
        meta[label] = (spec.get("role", "custom"), spec.get("type", _pauli_type(g)))
    specs = [StabilizerGroupSpec(lbl, meta[lbl][0], meta[lbl][1], tuple(gs)) for lbl, gs in groups.items()]
    return StabilizerCode(
        n=n,
        k=int(data["k"]),
        claimed_distance=int(data["claimed_distance"]),
        x_groups=tuple(s for s in specs if s.pauli_type == "X"),
        z_groups=tuple(s for s in specs if s.pauli_type != "X"),
        logical_x=tuple(parse_pauli(s, n) for s in data.get("logical_x", [])),
        logical_z=tuple(parse_pauli(s, n) for s in data.get("logical_z", [])),
        construction={"tag": "custom", "params": dict(cons.get("params", {}))},
    )


def _pauli_type(p: PauliOperator) -> str:
    if p.z == 0:
        return "X"
    if p.x == 0:
        return "Z"
    return "mixed"


def custom_code(generators, n: int, k: int, claimed_distance: int, logical_x=(), logical_z=()) -> StabilizerCode:
    """Ad hoc code from Pauli strings, one group per generator type."""
    gens = [g if isinstance(g, PauliOperator) else parse_pauli(g, n) for g in generators]
    by_type: dict[str, list] = {}
    for g in gens:
        by_type.setdefault(_pauli_type(g), []).append(g)
    specs = {t: StabilizerGroupSpec(f"custom-{t}", "custom", t, tuple(gs)) for t, gs in by_type.items()}
    as_op = lambda s: s if isinstance(s, PauliOperator) else parse_pauli(s, n)  # noqa: E731
    return StabilizerCode(
        n=n,
        k=k,
        claimed_distance=claimed_distance,
        x_groups=tuple(v for t, v in specs.items() if t == "X"),
        z_groups=tuple(v for t, v in specs.items() if t != "X"),
        logical_x=tuple(as_op(s) for s in logical_x),
        logical_z=tuple(as_op(s) for s in logical_z),
    )
