"""Compare the compiled scan kernel against the numpy fallback.

Runs the maximin subdisk search that dominates the bound computations on a
grid matching the default search configuration, once per backend, and prints
wall times plus the agreement of the results.

Usage: python3 benchmarks/bench_scan.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from essnorm import _scan_py
from essnorm.scan import BACKEND, poly_arrays

try:
    from essnorm import _scan as _compiled
except ImportError:
    _compiled = None


def _default_problem():
    # derivative polynomial of a mildly anisotropic symbol
    coeffs, za, zb = poly_arrays({(1, 0): 2.0 + 0j, (0, 1): -0.5 + 0.25j, (2, 1): 0.1j})
    radii = np.linspace(0.03, 0.97, 48)
    angles = np.linspace(0.0, 2 * np.pi, 48, endpoint=False)
    centers = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    cands_c, cands_s = [], []
    for c in centers:
        room = 1.0 - abs(c)
        for k in range(1, 25):
            cands_c.append(c)
            cands_s.append(room * k / 24)
    inner_r = np.linspace(0.0, 1.0, 24)
    inner_a = np.exp(1j * np.linspace(0.0, 2 * np.pi, 48, endpoint=False))
    unit = np.concatenate(([0j], (inner_r[1:, None] * inner_a[None, :]).ravel()))
    return (
        coeffs,
        za,
        zb,
        np.asarray(cands_c, dtype=np.complex128),
        np.asarray(cands_s, dtype=float),
        unit,
    )


def _run(mod, problem, repeats: int):
    coeffs, za, zb, centers, scales, unit = problem
    best = None
    t0 = time.perf_counter()
    for _ in range(repeats):
        best = mod.subdisk_maximin(coeffs, za, zb, centers, scales, unit, 1.0, 0.0)
    dt = (time.perf_counter() - t0) / repeats
    return best, dt


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    problem = _default_problem()
    n_cand = problem[3].size
    print(f"maximin search over {n_cand} candidate subdisks, {problem[5].size} inner points")
    print(f"import-time backend: {BACKEND}")

    py_best, py_dt = _run(_scan_py, problem, args.repeats)
    print(f"python  backend: {py_dt * 1e3:9.2f} ms   best={py_best[0]:.12g} idx={py_best[1]}")

    if _compiled is None:
        print("compiled backend: not built (pip install -e . rebuilds it)")
        return 0

    c_best, c_dt = _run(_compiled, problem, args.repeats)
    print(f"compiled backend: {c_dt * 1e3:9.2f} ms   best={c_best[0]:.12g} idx={c_best[1]}")
    print(f"speedup: {py_dt / c_dt:.1f}x")
    # numpy's SIMD complex ops round differently from scalar C by ~1 ulp, so
    # equal-value ties may resolve to different (symmetric) argmax candidates;
    # the maximin value itself must agree tightly.
    agree = abs(py_best[0] - c_best[0]) <= 1e-12 * max(1.0, abs(c_best[0]))
    tie_note = "" if py_best[1] == c_best[1] else f" (tie split: idx {py_best[1]} vs {c_best[1]})"
    print(f"agreement: {'ok' if agree else 'MISMATCH'}{tie_note}")
    return 0 if agree else 1


if __name__ == "__main__":
    raise SystemExit(main())
