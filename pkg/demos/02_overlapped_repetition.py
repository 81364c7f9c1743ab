"""
Overlapped repetition codes
===========================

``k`` repetition codes of length ``d`` share their last ``ell`` bits. The
shared bits carry the parity of the message, so every codeword still has
weight at least ``d``.
"""

from overlap_shor.classical import all_codewords, build_overlapped, min_distance

code = build_overlapped(2, 3, 1)
print(f"[{code.n}, {code.k}, {min_distance(code)}]")
for word in all_codewords(code):
    print("".join(map(str, word)))

###############################################################################
# Check rows come in groups: adjacent pairs inside each block, plus one
# bridge row tying the blocks to the shared region.

for group in code.groups:
    print(group.label, group.kind, len(group.rows))

###############################################################################
# Distances hold across a small sweep.

for k in range(1, 5):
    for d in (3, 4, 5):
        for ell in range(1, d // 2 + 1):
            assert min_distance(build_overlapped(k, d, ell)) == d
print("all distances equal d")
