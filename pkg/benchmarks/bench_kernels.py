"""Compare the numba kernels with the plain numpy/Python fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by ``BIRKHOFF_DISABLE_NUMBA``.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _best(fn, repeat):
    fn()  # warm-up (includes JIT compilation on first use)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run_backend(repeat: int) -> dict:
    from birkhoff_rigidity import backend_name, kernels
    from birkhoff_rigidity.norms import HilbertGram, Lp, Polyhedral

    rng = np.random.default_rng(0)
    d = 8
    e = rng.normal(size=d) + 1j * rng.normal(size=d)
    f = rng.normal(size=d) + 1j * rng.normal(size=d)
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    cases = {
        "line_search l3 complex": (Lp(3, d), e, f, True),
        "line_search gram complex": (HilbertGram(A @ A.conj().T + np.eye(d)), e, f, True),
        "line_search linf real": (Lp(np.inf, d), e.real.astype(complex), f.real.astype(complex), False),
        "line_search poly real": (Polyhedral.l1(4), e[:4].real.astype(complex),
                                  f[:4].real.astype(complex), False),
    }
    out = {"backend": backend_name()}
    for name, (nrm, a, b, ct) in cases.items():
        ctx = nrm.kernel_ctx()
        radius = 2 * nrm(a) / nrm(b)
        out[name] = _best(lambda: kernels.line_search_kernel(ctx, a, b, radius, ct, 1e-10 * radius), repeat)
    rows = rng.normal(size=(24, d)).astype(complex)
    ctx = Lp(1, d).kernel_ctx()
    out["pairwise l1 24 rows"] = _best(lambda: kernels.pairwise_kernel(ctx, rows, False, 1e-10), repeat)
    m = 400
    z = rng.normal(size=m) + 1j * rng.normal(size=m)
    D = np.abs(z[:, None] - z[None, :]) + np.eye(m)
    fv = rng.normal(size=m) + 1j * rng.normal(size=m)
    out["dil 400 points"] = _best(lambda: kernels.dil_kernel(D, fv), repeat)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", metavar="OUT")
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.child:
        print(json.dumps(run_backend(args.repeat)))
        return 0
    results = {}
    for flag in ("0", "1"):
        env = dict(os.environ, BIRKHOFF_DISABLE_NUMBA=flag)
        proc = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(args.repeat)],
                              env=env, capture_output=True, text=True, check=True)
        res = json.loads(proc.stdout.strip().splitlines()[-1])
        results[res.pop("backend")] = res
    fast, slow = results.get("numba", {}), results["numpy"]
    print(f"{'kernel':<28}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for name, t in slow.items():
        tn = fast.get(name)
        if tn is None:
            print(f"{name:<28}{'-':>12}{t * 1e3:>12.3f}{'-':>10}")
        else:
            print(f"{name:<28}{tn * 1e3:>12.3f}{t * 1e3:>12.3f}{t / tn:>9.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
