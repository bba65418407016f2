"""Time the hot kernels under the numba and pure-numpy backends.

    python3 benchmarks/bench_kernels.py --repeat 20
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from pivcat import _kernels
from pivcat.fusion_ring import fibonacci_ring, pointed_ring
from pivcat.groups import cyclic_group, dihedral_group, symmetric_group
from pivcat.pointed import CosetModule, sign_character, twist_exponents


def workloads():
    s4 = symmetric_group(4)
    d6 = dihedral_group(6)
    ring = pointed_ring(s4)
    L = np.transpose(ring.dense, (0, 2, 1)).copy()
    R = np.transpose(ring.dense, (1, 2, 0)).copy()
    mod = CosetModule(d6, d6.closure([d6.index("s")]))
    chi = np.array(twist_exponents(sign_character(symmetric_group(3))))
    s3mod = CosetModule(symmetric_group(3), ["e"])
    z12 = cyclic_group(12)
    fib = np.array([[0.0, 1.0], [1.0, 1.0]])
    return {
        "group associativity (S4)": (_kernels.group_associativity_violation, (s4.table,)),
        "fusion associativity (Vect[S4])": (_kernels.fusion_associativity_violation, (ring.dense,)),
        "representation (S4 regular)": (_kernels.representation_violation, (L, ring.dense, False)),
        "commutation (S4 bimodule)": (_kernels.commutation_violation, (L, R)),
        "power iteration (Fibonacci)": (_kernels.power_iteration, (fib, 1e-14, 10_000)),
        "theta enumeration (S3 regular, m=2)": (_kernels.enumerate_theta, (s3mod.action, chi, 2, True)),
        "theta enumeration (D6/<s>, m=2)": (_kernels.enumerate_theta,
                                           (mod.action, np.zeros(d6.order, dtype=np.int64), 2, False)),
        "double cosets (Z12)": (_kernels.double_coset_labels,
                                (z12.table, z12.mask(z12.closure([4])), z12.mask(z12.closure([6])))),
    }


def bench(fn, args, repeat: int) -> float:
    fn(*args)  # warm up (JIT compile or cache load)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=10)
    args = p.parse_args(argv)
    rows = []
    for name, (fn, fargs) in workloads().items():
        res = {}
        for backend in ("numpy", "numba"):
            prev = _kernels.set_backend(backend)
            try:
                res[backend] = bench(fn, fargs, args.repeat)
                out = fn(*fargs)
            finally:
                _kernels.set_backend(prev)
            res[backend + "_out"] = out
        same = repr(res["numpy_out"]) == repr(res["numba_out"])
        rows.append((name, res["numpy"], res["numba"], same))
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy ms':>10}  {'numba ms':>10}  {'speedup':>8}  agree")
    for name, a, b, same in rows:
        print(f"{name:<{width}}  {a * 1e3:10.3f}  {b * 1e3:10.3f}  {a / b:8.1f}x  {'yes' if same else 'NO'}")
    return 0 if all(r[3] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
