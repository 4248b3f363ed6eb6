#!/usr/bin/env python3
"""Regenerate the shipped symbol files in symbols/.

Deterministic: the random rank-3 symbol is drawn from a fixed seed, so
rerunning this script reproduces the checked-in files byte-for-byte.
"""
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from toeplitz_lab.families import (diag_laurent, random_matrix_symbol,
                                   su2_power, su2_symbol, z_power)
from toeplitz_lab.symbol_io import save_symbol

RANDOM_RANK3_SEED = 7


def main() -> None:
    out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "symbols")
    os.makedirs(out_dir, exist_ok=True)

    def put(name, symbol):
        path = os.path.join(out_dir, name)
        save_symbol(symbol, path)
        print(f"wrote {os.path.relpath(path)}")

    for m in range(-3, 4):
        put(f"s1_z_{m}.json", z_power(m))

    put("s1_diag_z_zm2.json", diag_laurent([z_power(1), z_power(-2)]))

    rng = np.random.default_rng(RANDOM_RANK3_SEED)
    random_rank3, index = random_matrix_symbol(rng, rank=3)
    print(f"  (random rank-3 symbol has index {index})")
    put("s1_random_rank3.json", random_rank3)

    put("s3_su2.json", su2_symbol())
    for k in (-2, -1, 2):
        put(f"s3_su2_pow_{k}.json", su2_power(k))


if __name__ == "__main__":
    main()
