"""Compare the compiled kernels with the pure-Python fallback.

Each backend runs in its own interpreter (the switch is read at import
time).  The workload is run once to warm up (numba compiles on first
call) and then timed.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOAD = r"""
import json, time
from p3pack import _accel
from p3pack.constructions import base_graph, y_construction, r_s
from p3pack.packing import count_lambda_factors, max_lambda_packing
from p3pack.connectivity import is_cyclically_k_edge_connected
from p3pack.claims import evaluate_claim

prism = base_graph("prism")
Y3, _ = y_construction(prism, 0, prism, 0, prism, 0)
R2, _ = r_s(2)
pet = base_graph("petersen")

def work():
    out = {}
    t = time.perf_counter(); out["factor_count_Y3"] = count_lambda_factors(Y3); out["t_factors"] = time.perf_counter() - t
    t = time.perf_counter(); out["lambda_petersen"] = max_lambda_packing(pet)[0]; out["t_packing"] = time.perf_counter() - t
    t = time.perf_counter(); out["cyc5_R2"] = is_cyclically_k_edge_connected(R2, 5); out["t_cyclic"] = time.perf_counter() - t
    t = time.perf_counter(); out["z7_prism"] = evaluate_claim(prism, "z7").verdict.value; out["t_claim"] = time.perf_counter() - t
    return out

t0 = time.perf_counter(); work(); warm = time.perf_counter() - t0
runs = []
for _ in range(REPEAT):
    runs.append(work())
print(json.dumps({"backend": _accel.backend(), "warmup": warm, "runs": runs}))
"""


def run(flag: str, repeat: int) -> dict:
    env = dict(os.environ, P3PACK_NUMBA=flag)
    code = WORKLOAD.replace("REPEAT", str(repeat))
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    results = {flag: run(flag, args.repeat) for flag in ("1", "0")}
    fast, slow = results["1"], results["0"]
    keys = [k for k in fast["runs"][0] if k.startswith("t_")]
    answers = [k for k in fast["runs"][0] if not k.startswith("t_")]
    for k in answers:
        if fast["runs"][0][k] != slow["runs"][0][k]:
            sys.exit(f"backends disagree on {k}: {fast['runs'][0][k]} vs {slow['runs'][0][k]}")
    print(f"{'task':<12} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for k in keys:
        a = min(r[k] for r in fast["runs"])
        b = min(r[k] for r in slow["runs"])
        print(f"{k[2:]:<12} {a:>10.4f} {b:>10.4f} {b / a if a else float('inf'):>8.1f}x")
    print(f"warm-up (includes compilation): {fast['warmup']:.2f}s vs {slow['warmup']:.2f}s")
    print("answers agree:", {k: fast["runs"][0][k] for k in answers})


if __name__ == "__main__":
    main()
