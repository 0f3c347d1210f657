"""Benchmark the compiled row-reduction kernel against the pure fallback.

Workloads are the two shapes that dominate the verification suite: the
dense endomorphism system of the largest built-in fixture and the sparse
multiplication-map ranks behind the cohomology tables.

Run from the repo root after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_rowreduce.py
"""

import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from spinorsheaf import _rowreduce_py as pure  # noqa: E402

try:
    from spinorsheaf import _rowreduce_cy as compiled  # noqa: E402
except ImportError:
    compiled = None

from spinorsheaf.exactalg import _scaled_int_rows, monomials  # noqa: E402
from spinorsheaf.fixtures import get_fixture  # noqa: E402
from spinorsheaf.homalg import _hom_system  # noqa: E402
from spinorsheaf.spinor import build_factorization, build_ideal  # noqa: E402


def hom_system_rows(label):
    fx = get_fixture(label)
    module = build_ideal(fx.space, fx.w)
    rows, nvars = _hom_system(module, module, both_families=True)
    return _scaled_int_rows(rows), nvars


def mult_map_sparse_rows(label, t):
    fx = get_fixture(label)
    mf = build_factorization(build_ideal(fx.space, fx.w))
    lm = mf.phi
    n = lm.n
    dom = monomials(n, t - 1)
    codom = monomials(n, t)
    idx = {m: i for i, m in enumerate(codom)}
    rows = [dict() for _ in range(len(codom) * lm.rows)]
    for mi, mu in enumerate(dom):
        for k in range(n):
            nu = mu[:k] + (mu[k] + 1,) + mu[k + 1 :]
            ri = idx[nu]
            coeff = lm.coeff[k]
            for r in range(lm.rows):
                for j in range(lm.cols):
                    v = coeff[r, j]
                    if v:
                        col = mi * lm.cols + j
                        rows[ri * lm.rows + r][col] = (
                            rows[ri * lm.rows + r].get(col, 0) + v
                        )
    out = []
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        if row:
            out.append({c: 2 * v if v.denominator == 2 else v.numerator
                        for c, v in row.items()})
    return out


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


def bench_echelon(label):
    rows, nvars = hom_system_rows(label)
    work_p = [r[:] for r in rows]
    res_p, tp = timed(pure.echelon, work_p, nvars)
    line = f"echelon {label} end-system ({len(rows)}x{nvars}): pure {tp:.3f}s"
    if compiled is not None:
        work_c = [r[:] for r in rows]
        res_c, tc = timed(compiled.echelon, work_c, nvars)
        assert res_p == res_c and work_p == work_c
        line += f", compiled {tc:.3f}s, speedup {tp / tc:.1f}x"
    print(line)


def bench_sparse(label, t):
    rows = mult_map_sparse_rows(label, t)
    work_p = [dict(d) for d in rows]
    res_p, tp = timed(pure.sparse_rank, work_p)
    line = f"sparse_rank {label} mult map t={t} ({len(rows)} rows): pure {tp:.3f}s"
    if compiled is not None:
        work_c = [dict(d) for d in rows]
        res_c, tc = timed(compiled.sparse_rank, work_c)
        assert res_p == res_c
        line += f", compiled {tc:.3f}s, speedup {tp / tc:.1f}x"
    print(line)


def main():
    print(f"compiled kernel available: {compiled is not None}")
    bench_echelon("F-H6")
    bench_echelon("F-H6a")
    bench_sparse("F-H6", 6)
    bench_sparse("F-H6a", 6)


if __name__ == "__main__":
    main()
