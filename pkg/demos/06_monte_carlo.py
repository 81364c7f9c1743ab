"""
Logical failure rates under depolarizing noise
==============================================

Failures scale roughly as ``p**2`` for a distance-3 code. Shots flagged as
unrecoverable are counted separately from failures.
"""

from overlap_shor import build_shor
from overlap_shor.decoder import build_lookup
from overlap_shor.simulator import NoiseModel, gain_scan, loglog_slope, run_monte_carlo

code = build_shor(3)
dec = build_lookup(code, 1)
ps = [3e-3, 1e-2, 3e-2]
shots = 200_000
runs = [run_monte_carlo(code, dec, NoiseModel.depolarizing(p), shots, seed=7) for p in ps]
for r in runs:
    lo, hi = r.wilson_interval_95
    print(f"p={r.p:.0e} failures={r.failures} detections={r.detections} rate in [{lo:.2e}, {hi:.2e}]")
print("slope", round(loglog_slope(ps, [r.failures for r in runs], [shots] * 3), 2))

###############################################################################
# Fewer rules means less time exposed to noise while decoding.

for row in gain_scan(code, [1e-3, 1e-2]):
    print(row)
