"""Monte Carlo logical failure rates under i.i.d. Pauli noise.

Randomness is counter based: shot ``i`` under seed ``s`` reads the Philox
stream with key ``s`` starting at counter ``i * ceil(n / 4)`` (each counter
value yields four 64-bit words). Any shot can therefore be regenerated on its
own, and the totals do not depend on how shots are split across workers.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import optimize, stats

from .builder import StabilizerCode
from .decoder import CORRECTION, DETECTED, Decoder, build_grouped, judge, noerror_gain
from .errors import InvalidParameter
from .pauli import PauliOperator
from .verifier import _Classifier, check_valid

BLOCK_SHOTS = 8192
THREADS_ENV = "OVERLAP_SHOR_THREADS"
MAX_RECORDED_FAILURES = 1000


@dataclass(frozen=True)
class NoiseModel:
    px: float
    py: float
    pz: float

    def __post_init__(self):
        probs = (self.px, self.py, self.pz)
        if min(probs) < 0 or sum(probs) > 1 + 1e-12:
            raise InvalidParameter(f"invalid Pauli probabilities {probs}")

    @classmethod
    def depolarizing(cls, p: float) -> NoiseModel:
        return cls(p / 3, p / 3, p / 3)

    @property
    def total(self) -> float:
        return self.px + self.py + self.pz


def _words_per_shot(n: int) -> int:
    return -(-n // 4)


def shot_uniforms(seed: int, start: int, count: int, n: int) -> np.ndarray:
    """Uniforms in [0, 1) for shots ``start .. start+count-1``, shape (count, n)."""
    per = _words_per_shot(n)
    bitgen = np.random.Philox(key=seed, counter=start * per)
    raw = bitgen.random_raw(count * per * 4).reshape(count, per * 4)[:, :n]
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def errors_from_uniforms(model: NoiseModel, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """X and Z bit arrays: u < px -> X, < px+py -> Y, < px+py+pz -> Z."""
    a = model.px
    b = a + model.py
    c = b + model.pz
    x = (u < b).astype(np.uint8)
    z = ((u >= a) & (u < c)).astype(np.uint8)
    return x, z


def sample_error(model: NoiseModel, n: int, rng: np.random.Generator) -> PauliOperator:
    x, z = errors_from_uniforms(model, rng.random((1, n)))
    return PauliOperator.from_bits(x[0], z[0])


def sample_shot(model: NoiseModel, n: int, seed: int, index: int) -> PauliOperator:
    x, z = errors_from_uniforms(model, shot_uniforms(seed, index, 1, n))
    return PauliOperator.from_bits(x[0], z[0])


@dataclass
class SimulationSummary:
    shots: int
    failures: int
    detections: int
    seed: int
    p: Optional[float] = None
    code: str = ""
    decoder: str = ""
    failure_shots: list = field(default_factory=list, repr=False)

    @property
    def failure_rate(self) -> float:
        return self.failures / self.shots

    @property
    def wilson_interval_95(self) -> tuple[float, float]:
        ci = stats.binomtest(self.failures, self.shots).proportion_ci(0.95, method="wilson")
        return float(ci.low), float(ci.high)

    def csv_row(self) -> dict:
        lo, hi = self.wilson_interval_95
        return {
            "p": self.p,
            "decoder": self.decoder,
            "shots": self.shots,
            "failures": self.failures,
            "detections": self.detections,
            "rate": self.failure_rate,
            "ci_lo": lo,
            "ci_hi": hi,
            "seed": self.seed,
        }


class _ShotRunner:
    def __init__(self, code: StabilizerCode, dec: Decoder, model: NoiseModel, seed: int):
        self.code, self.dec, self.model, self.seed = code, dec, model, seed
        gens = code.generators
        self.gx = np.array([g.x_bits for g in gens], dtype=np.int64).reshape(len(gens), code.n)
        self.gz = np.array([g.z_bits for g in gens], dtype=np.int64).reshape(len(gens), code.n)
        logicals = list(code.logical_x) + list(code.logical_z)
        self.lx = np.array([g.x_bits for g in logicals], dtype=np.int64).reshape(len(logicals), code.n)
        self.lz = np.array([g.z_bits for g in logicals], dtype=np.int64).reshape(len(logicals), code.n)
        wide = len(gens) >= 63
        self.powers = np.array([1 << i for i in range(len(gens))], dtype=object if wide else np.int64)

    def run_block(self, start: int, count: int) -> tuple[int, int, list[int]]:
        n = self.code.n
        ex, ez = errors_from_uniforms(self.model, shot_uniforms(self.seed, start, count, n))
        ex, ez = ex.astype(np.int64), ez.astype(np.int64)
        synd_bits = (ex @ self.gz.T + ez @ self.gx.T) & 1
        if self.powers.dtype == object:
            keys = [int(v) for v in synd_bits.astype(object) @ self.powers]
        else:
            keys = (synd_bits @ self.powers).tolist() if synd_bits.shape[1] else [0] * count
        uniq = {}
        for key in keys:
            if key not in uniq:
                uniq[key] = self.dec.decode_mask(key)
        cx = np.zeros_like(ex)
        cz = np.zeros_like(ez)
        detected = np.zeros(count, dtype=bool)
        for i, key in enumerate(keys):
            out = uniq[key]
            if out.kind == CORRECTION:
                cx[i] = out.correction.x_bits
                cz[i] = out.correction.z_bits
            elif out.kind == DETECTED:
                detected[i] = True
        rx, rz = ex ^ cx, ez ^ cz
        # A syndrome-free residual is a stabilizer iff it commutes with every logical.
        action = (rx @ self.lz.T + rz @ self.lx.T) & 1
        failed = action.any(axis=1) & ~detected
        idx = (np.nonzero(failed)[0] + start).tolist()
        return int(failed.sum()), int(detected.sum()), idx


def default_threads() -> int:
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def run_monte_carlo(
    code: StabilizerCode,
    dec: Decoder,
    model: NoiseModel,
    shots: int,
    seed: int,
    threads: Optional[int] = None,
) -> SimulationSummary:
    """Inject, decode and score ``shots`` sampled errors.

    Shots whose syndrome the decoder flags as unrecoverable count as
    detections, not failures.
    """
    if shots < 1:
        raise InvalidParameter(f"need shots >= 1, got {shots}")
    if not 0 <= seed < 2**64:
        raise InvalidParameter("seed must be a 64-bit unsigned integer")
    report = check_valid(code)
    if not report:
        raise InvalidParameter("code is not a valid stabilizer code: " + "; ".join(report.diagnostics[:3]))
    runner = _ShotRunner(code, dec, model, seed)
    blocks = [(s, min(BLOCK_SHOTS, shots - s)) for s in range(0, shots, BLOCK_SHOTS)]
    threads = threads or default_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda b: runner.run_block(*b), blocks))
    else:
        results = [runner.run_block(*b) for b in blocks]
    failures = sum(r[0] for r in results)
    detections = sum(r[1] for r in results)
    failed_idx = [i for r in results for i in r[2]][:MAX_RECORDED_FAILURES]
    return SimulationSummary(
        shots=shots,
        failures=failures,
        detections=detections,
        seed=seed,
        p=model.total,
        code=repr(code),
        decoder=dec.descriptor,
        failure_shots=failed_idx,
    )


def replay_shot(code: StabilizerCode, dec: Decoder, model: NoiseModel, seed: int, index: int) -> tuple[PauliOperator, str]:
    """Regenerate shot ``index`` and score it with the census rules."""
    e = sample_shot(model, code.n, seed, index)
    return e, judge(_Classifier(code), dec, e)


def loglog_slope(ps: Sequence[float], failures: Sequence[int], shots: Sequence[int]) -> float:
    """Exponent ``b`` of a Poisson maximum-likelihood fit ``rate = A * p**b``.

    Counts enter through the likelihood, so points with zero failures still
    contribute and sparse points weigh less than well-populated ones.
    """
    lp = np.log(np.asarray(ps, dtype=float))
    f = np.asarray(failures, dtype=float)
    s = np.asarray(shots, dtype=float)
    if f.sum() == 0:
        raise InvalidParameter("cannot fit a slope with zero failures everywhere")

    def nll(theta):
        a, b = theta
        lam = s * np.exp(a + b * lp)
        return float(np.sum(lam - f * (a + b * lp)))

    ok = f > 0
    b0 = np.polyfit(lp[ok], np.log(f[ok] / s[ok]), 1)[0] if ok.sum() >= 2 else 2.0
    a0 = math.log(f.sum() / np.sum(s * np.exp(b0 * lp)))
    res = optimize.minimize(nll, x0=[a0, b0], method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 10000})
    return float(res.x[1])


def gain_scan(code: StabilizerCode, p_grid: Sequence[float]) -> list[dict]:
    """No-error gain with ``c`` = grouped rule count and ``c'`` = full table size."""
    if len(p_grid) == 0:
        raise InvalidParameter("empty probability grid")
    c = build_grouped(code).rule_count
    c_prime = 2 ** len(code.generators)
    rows = []
    for p in p_grid:
        gain = noerror_gain(c, c_prime, p)
        rows.append({"p": p, "c": c, "c_prime": c_prime, "gain": gain, "log_gain": -(c_prime - c) * math.log1p(-p)})
    return rows


def summaries_to_csv(summaries: Sequence[SimulationSummary]) -> str:
    buf = io.StringIO()
    cols = ["p", "decoder", "shots", "failures", "detections", "rate", "ci_lo", "ci_hi", "seed"]
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for s in summaries:
        writer.writerow(s.csv_row())
    return buf.getvalue()
