#!/usr/bin/env python3
"""Freezes reference-oracle outputs into tests/data/.

Inputs are fixed random bitstreams (generated once, committed); expected
p-values come from sp800_22_reference.py with the suite's default
parameters. Rerun only when the frozen corpus itself must change.
"""
import json
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))
import sp800_22_reference as ref

DATA = os.path.join(os.path.dirname(__file__), "..", "data")
INPUTS = os.path.join(DATA, "nist_inputs")


def result_entry(pvals):
    if pvals is None:
        return {"applicable": False, "p_values": []}
    return {"applicable": True, "p_values": [float(p) for p in pvals]}


def main():
    os.makedirs(INPUTS, exist_ok=True)
    rng = np.random.default_rng(0x5EED)
    cases = []
    specs = [(f"case_{i:02d}.bin", 10_000) for i in range(20)]
    specs.append(("case_1m.bin", 1_000_000))
    for name, n_bits in specs:
        path = os.path.join(INPUTS, name)
        if not os.path.exists(path):
            bits = rng.integers(0, 2, size=n_bits, dtype=np.int8).astype(np.uint8)
            np.packbits(bits).tofile(path)
        eps = ref.bits_from_packed(open(path, "rb").read(), n_bits)
        results = {k: result_entry(v) for k, v in ref.run_all(eps).items()}
        cases.append({"file": "nist_inputs/" + name, "n_bits": n_bits, "results": results})
        print(f"froze {name} ({n_bits} bits)")

    # binary expansion of e: immutable external anchor (see data/e_1m.bin)
    e_path = os.path.join(INPUTS, "e_1m.bin")
    if os.path.exists(e_path):
        eps = ref.bits_from_packed(open(e_path, "rb").read(), 1_000_000)
        results = {k: result_entry(v) for k, v in ref.run_all(eps).items()}
        cases.append({"file": "nist_inputs/e_1m.bin", "n_bits": 1_000_000, "results": results})
        print("froze e_1m.bin")

    out = {
        "params": {
            "block_frequency_m": 128,
            "serial_m": 16,
            "approximate_entropy_m": 10,
            "linear_complexity_m": 500,
            "template": "000000001",
        },
        "cases": cases,
    }
    with open(os.path.join(DATA, "nist_expected.json"), "w") as f:
        json.dump(out, f, indent=1)
    print("wrote nist_expected.json")


if __name__ == "__main__":
    main()
