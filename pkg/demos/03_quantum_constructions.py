"""
Four constructions side by side
===============================

Every code here is a concatenation of a classical inner layer (Z checks) and
an outer layer (X checks). Overlap can be applied to either layer or both.
"""

from overlap_shor import build, predicted_parameters, weight_census
from overlap_shor.builder import asymptotic_rate, rate_ratio_vs_shor

for tag, params in [
    ("shor", {"d": 3}),
    ("outer", {"k": 2, "d": 3, "ell": 1}),
    ("inner", {"t": 1, "d": 3, "ell": 1}),
    ("double", {"k_o": 2, "d": 3, "ell": 1}),
]:
    code = build(tag, **params)
    print(f"{tag:7s} {predicted_parameters(tag, **params)}  {weight_census(code)}")

###############################################################################
# Asymptotic rates are exact rationals.

for tag in ("shor", "outer", "double"):
    print(tag, asymptotic_rate(tag, 4, 2), rate_ratio_vs_shor(tag, 4, 2))
