"""Compare the compiled and pure-Python kernels.

Two measurements:
  * kernel: apply_local on the same inputs with each implementation, outputs
    compared for equality;
  * pipeline: end-to-end workloads run in fresh interpreters with
    LINKSGOULD_KERNELS=python / compiled.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

WORKLOADS = {
    "LG3 6^2_2 (7 crossings, 3 strands)": "compute(3, link_lookup('6^2_2').word)",
    "LG4 5_1 (5 crossings, 2 strands)": "compute(4, link_lookup('5_1').word)",
    "QYBE m=4 (4096-dim)": "check_qybe(4)",
}
QUICK = ["LG3 6^2_2 (7 crossings, 3 strands)"]

CHILD = """
import time, json
from linksgould import backend
from linksgould.braid import link_lookup
from linksgould.invariant import compute
from linksgould.statemodel import build
from linksgould.verify import check_qybe
for m in (3, 4):
    build(m)
t = time.perf_counter()
{stmt}
print(json.dumps({{"backend": backend.NAME, "seconds": time.perf_counter() - t}}))
"""


def pipeline(stmt: str, kernels: str) -> dict:
    env = dict(os.environ, LINKSGOULD_KERNELS=kernels)
    out = subprocess.run([sys.executable, "-c", CHILD.format(stmt=stmt)], env=env,
                         check=True, capture_output=True, text=True).stdout
    return json.loads(out.strip().splitlines()[-1])


def kernel_bench(repeat: int):
    from linksgould import _kernels
    from linksgould.statemodel import build
    from linksgould.tensor import SparseOperator, apply_word
    try:
        from linksgould import _ckernels
    except ImportError:
        print("compiled kernels not built; kernel comparison skipped")
        return
    model = build(4)
    z = apply_word(SparseOperator.identity(model, 3), (1, 2), model)
    args = (z.rows, model.local_cols(True), 1, model.N ** 2, model.ctx.sqtable)
    res = {}
    for name, mod in (("python", _kernels), ("cython", _ckernels)):
        times = []
        for _ in range(repeat):
            t = time.perf_counter()
            res[name] = mod.apply_local(*args)
            times.append(time.perf_counter() - t)
        print(f"  apply_local m=4 w=3 [{name:6s}] median {statistics.median(times):.3f} s")
    print(f"  outputs identical: {res['python'] == res['cython']}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="one small pipeline workload")
    args = ap.parse_args()
    print("kernel:")
    kernel_bench(args.repeat)
    print("pipeline:")
    names = QUICK if args.quick else list(WORKLOADS)
    for name in names:
        row = {}
        for kernels in ("python", "compiled"):
            try:
                runs = [pipeline(WORKLOADS[name], kernels) for _ in range(args.repeat)]
            except subprocess.CalledProcessError:
                row[kernels] = None
                continue
            row[kernels] = statistics.median(r["seconds"] for r in runs)
        py, cy = row["python"], row["compiled"]
        if cy is None:
            print(f"  {name}: python {py:.2f} s (compiled kernels unavailable)")
        else:
            print(f"  {name}: python {py:.2f} s, compiled {cy:.2f} s, speedup {py / cy:.1f}x")


if __name__ == "__main__":
    main()
