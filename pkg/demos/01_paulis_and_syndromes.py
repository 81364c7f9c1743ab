"""
Pauli operators and syndromes
=============================

Build the nine-qubit code, look at its generators, and read off syndromes
for a few single-qubit errors.
"""

from overlap_shor import build_shor, extract_syndrome, parse_pauli
from overlap_shor.pauli import commutes, format_pauli

code = build_shor(3)
for i, g in enumerate(code.generators):
    print(f"g{i} = {format_pauli(g)}")

###############################################################################
# Bit ``i`` of a syndrome says whether the error anticommutes with ``g_i``.
# The three Z errors inside one block share a syndrome (degeneracy).

for text in ["X0", "Y4", "Z0", "Z1", "Z2", "X0Z3"]:
    e = parse_pauli(text, code.n)
    print(f"{text:>5}  {extract_syndrome(code, e)}")

###############################################################################
# Operators multiply without phases; commutation is the symplectic product.

a, b = parse_pauli("X0X1", 9), parse_pauli("Z1Z2", 9)
print(format_pauli(a * b), commutes(a, b))
