# Compressed size as a stand-in for description length, decompression work as a stand-in for depth.

import numpy as np

from cirlab.complexity import LZ78Compressor, def1_indicator, k_estimate
from cirlab.eca import evolve

rng = np.random.default_rng(20240101)
samples = {
    "(01)^1000": "01" * 1000,
    "random": "".join(map(str, rng.integers(0, 2, 2000))),
    "rule 30 row 999": evolve(30, "1", 999).final.bits,
    "rule 90 row 999": evolve(90, "1", 999).final.bits,
}
for name, s in samples.items():
    a = k_estimate(s)
    b = k_estimate(s, LZ78Compressor())
    print(f"{name:18s} len {len(s):5d}  {a.compressor_id} {a.compressed_bits:5d}  {b.compressor_id} {b.compressed_bits:5d}")

# how far does row n sit above the cost of naming n?
for rule in (254, 90, 30):
    rep = def1_indicator(evolve(rule, "1", 512))
    print(f"rule {rule:3d}: final margin {rep.rows[-1][3]:5d}  slope {rep.margin_slope:.2f}")
