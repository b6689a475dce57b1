#!/usr/bin/env python
"""Timing comparison of the numpy and compiled kernel implementations.

Benchmarks the two hot kernels on random dense states:

* ``apply_kraus_single`` — one-qubit channel application,
* ``pair_singular_values`` — singular values for every generator pair of
  the evenly split bipartition (the heaviest cut of the spectral route).

Usage::

    python benchmarks/bench_kernels.py [--max-qubits 6] [--target-time 0.2]
"""

import argparse
import time
from itertools import combinations

import numpy as np

from ghzlbc import _backend, _kernels_py
from ghzlbc.channels import kraus_ops

try:
    from ghzlbc import _kernels_cy
except ImportError:
    _kernels_cy = None


def random_root(rng, n_qubits):
    dim = 2 ** n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    rho /= np.trace(rho)
    w, v = np.linalg.eigh(rho)
    return np.ascontiguousarray((v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T)


def pair_columns(d1, d2):
    quads = [
        (i1 * d2 + i2, i1 * d2 + j2, j1 * d2 + i2, j1 * d2 + j2)
        for i1, j1 in combinations(range(d1), 2)
        for i2, j2 in combinations(range(d2), 2)
    ]
    return np.array(quads, dtype=np.int64)


def timeit(func, target_time):
    """Median best-of-batches time per call, with adaptive batch size."""
    func()  # warm up
    number = 1
    while True:
        start = time.perf_counter()
        for _ in range(number):
            func()
        elapsed = time.perf_counter() - start
        if elapsed >= target_time or number >= 1 << 20:
            return elapsed / number
        number *= 2


def fmt_time(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:9.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:9.2f} ms"
    return f"{seconds:9.2f} s "


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-qubits", type=int, default=6,
                        help="largest register size to benchmark (default 6)")
    parser.add_argument("--target-time", type=float, default=0.2,
                        help="seconds of repeats per measurement (default 0.2)")
    args = parser.parse_args()

    print(f"active backend: {_backend.backend_name()}")
    if _kernels_cy is None:
        print("compiled extension not importable; timing the numpy kernels only")
    rng = np.random.default_rng(1)

    header = f"{'kernel':<22} {'N':>2} {'python':>12} {'compiled':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))

    kraus = kraus_ops("D", 0.3).as_array()
    for n in range(3, args.max_qubits + 1):
        root = random_root(rng, n)
        rho = np.ascontiguousarray(root @ root.conj().T)
        shift = n // 2

        t_py = timeit(
            lambda: _kernels_py.apply_kraus_single(rho, kraus, shift),
            args.target_time,
        )
        if _kernels_cy is not None:
            t_cy = timeit(
                lambda: _kernels_cy.apply_kraus_single(rho, kraus, shift),
                args.target_time,
            )
            ratio = f"{t_py / t_cy:7.1f}x"
            cy_cell = fmt_time(t_cy)
        else:
            ratio, cy_cell = "      --", "          --"
        print(f"{'apply_kraus_single':<22} {n:>2} {fmt_time(t_py)} {cy_cell} {ratio}")

    for n in range(3, args.max_qubits + 1):
        root = random_root(rng, n)
        cols = pair_columns(2 ** (n // 2), 2 ** (n - n // 2))

        t_py = timeit(
            lambda: _kernels_py.pair_singular_values(root, cols),
            args.target_time,
        )
        if _kernels_cy is not None:
            t_cy = timeit(
                lambda: _kernels_cy.pair_singular_values(root, cols),
                args.target_time,
            )
            ratio = f"{t_py / t_cy:7.1f}x"
            cy_cell = fmt_time(t_cy)
        else:
            ratio, cy_cell = "      --", "          --"
        print(f"{'pair_singular_values':<22} {n:>2} {fmt_time(t_py)} {cy_cell} {ratio}"
              f"   ({cols.shape[0]} pairs)")


if __name__ == "__main__":
    main()
