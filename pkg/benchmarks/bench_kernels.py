"""Compare the compiled and pure-Python mod-p kernels.

    python3 benchmarks/bench_kernels.py [--degree 400] [--repeat 5] [--end-to-end]

Kernel timings use every importable backend in-process.  ``--end-to-end``
also times a degree sequence in subprocesses with and without
BIRDYN_PURE_PYTHON, since the backend is chosen at import.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from birdyn.kernels import backends

P = 2147483629

E2E = ("import time; from fractions import Fraction; from birdyn import degree_sequence; "
       "from birdyn.families import lf_map; from birdyn.families.planar import LinearFractionalParams; "
       "t = time.perf_counter(); degree_sequence(lf_map(LinearFractionalParams(Fraction(2, 3), Fraction(5, 7))), {n}); "
       "print(time.perf_counter() - t)")


def _poly(rng, deg):
    return [rng.randrange(P) for _ in range(deg)] + [1]


def kernel_table(degree, repeat):
    rng = random.Random(1)
    a, b = _poly(rng, degree), _poly(rng, degree // 2)
    c = _poly(rng, degree // 4)
    rows = []
    for name, mod in sorted(backends().items()):
        ac, bc = mod.mul(a, c, P), mod.mul(b, c, P)
        cases = {
            "mul": lambda: mod.mul(a, b, P),
            "divmod": lambda: mod.divmod_(a, b, P),
            "gcd": lambda: mod.gcd(ac, bc, P),
            "powmod": lambda: mod.powmod([0, 1], P, b, P),
        }
        for op, fn in cases.items():
            best = min(timeit.repeat(fn, number=1, repeat=repeat))
            rows.append((op, name, best))
    return rows


def end_to_end(n):
    out = {}
    for label, env in (("cython", "0"), ("python", "1")):
        proc = subprocess.run([sys.executable, "-c", E2E.format(n=n)], capture_output=True, text=True,
                              env={**os.environ, "BIRDYN_PURE_PYTHON": env}, check=True)
        out[label] = float(proc.stdout.strip())
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=400)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--n", type=int, default=18, help="iterates for the end-to-end run")
    args = ap.parse_args(argv)

    rows = kernel_table(args.degree, args.repeat)
    by_op = {}
    for op, name, t in rows:
        by_op.setdefault(op, {})[name] = t
    print(f"{'op':8} {'backend':8} {'seconds':>10} {'speedup':>8}")
    for op, times in by_op.items():
        base = times.get("python")
        for name, t in sorted(times.items()):
            speed = f"{base / t:8.1f}" if base else ""
            print(f"{op:8} {name:8} {t:10.6f} {speed}")
    if args.end_to_end:
        e2e = end_to_end(args.n)
        print(f"degree_sequence(n={args.n}): " + ", ".join(f"{k} {v:.3f}s" for k, v in e2e.items()))


if __name__ == "__main__":
    main()
