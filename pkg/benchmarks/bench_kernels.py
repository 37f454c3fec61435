"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the two hot paths on representative workloads: Pauli weight scans on
encoder generators and canonical encoding of catalog gadget graphs.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from gadgetminer import _kernels_py
from gadgetminer.canon import certificate
from gadgetminer.catalog import build_gadget
from gadgetminer.circuit import Circuit
from gadgetminer.graph import circuit_to_graph
from gadgetminer.tableau import Pauli, StabilizerCode, encoder_code

try:
    from gadgetminer import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _steane_masks():
    gates = [(0, 1), (0, 2), (6, 0), (6, 1), (6, 3),
             (5, 0), (5, 2), (5, 3), (4, 1), (4, 2), (4, 3)]
    code = encoder_code(Circuit.from_pairs(7, gates), 1, (4, 5, 6))
    return [g.x for g in code.generators], [g.z for g in code.generators]


def _five_qubit_masks():
    gens = tuple(Pauli.from_str(s)
                 for s in ("+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"))
    code = StabilizerCode(5, 1, gens)
    return [g.x for g in code.generators], [g.z for g in code.generators]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    sx, sz = _steane_masks()
    fx, fz = _five_qubit_masks()
    o6 = circuit_to_graph(build_gadget("O", 3).as_circuit())
    dcx6 = circuit_to_graph(build_gadget("DCX", 3).as_circuit())

    import gadgetminer.canon as canon_mod

    def bench_with(impl):
        rows = {}
        rows["profile n=7 w<=3 x200"] = _time(
            lambda: [impl.pauli_weight_profile(sx, sz, 7, 3)
                     for _ in range(200)], args.repeat)
        rows["min_weight n=5 x200"] = _time(
            lambda: [impl.min_logical_weight(fx, fz, 5, 5)
                     for _ in range(200)], args.repeat)
        saved = canon_mod.kernels.canonical_encoding
        canon_mod.kernels.canonical_encoding = impl.canonical_encoding
        try:
            rows["certificate O6 x20"] = _time(
                lambda: [certificate(o6) for _ in range(20)], args.repeat)
            rows["certificate DCX6 x20"] = _time(
                lambda: [certificate(dcx6) for _ in range(20)], args.repeat)
        finally:
            canon_mod.kernels.canonical_encoding = saved
        return rows

    pure = bench_with(_kernels_py)
    if _kernels is None:
        print("compiled kernels unavailable; pure-Python timings only")
        for name, t in pure.items():
            print(f"{name:28s} pure {t * 1e3:8.2f} ms")
        return 0
    fast = bench_with(_kernels)
    print(f"{'workload':28s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name in pure:
        ratio = pure[name] / fast[name] if fast[name] else float('inf')
        print(f"{name:28s} {pure[name] * 1e3:8.2f}ms {fast[name] * 1e3:8.2f}ms "
              f"{ratio:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
