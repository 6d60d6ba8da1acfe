import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
from p3pack import _accel
from p3pack.constructions import base_graph, r_s
from p3pack.connectivity import enumerate_3_edge_cuts, is_cyclically_k_edge_connected, vertex_connectivity
from p3pack.packing import FactorConstraint, count_lambda_factors, enumerate_lambda_factors, max_lambda_packing
from p3pack.claims import evaluate_claim

prism, pet, cube = base_graph("prism"), base_graph("petersen"), base_graph("cube")
R1, _ = r_s(1)
out = {
    "backend": _accel.backend(),
    "count_prism": count_lambda_factors(prism),
    "count_R1": count_lambda_factors(R1),
    "factors_K33": [P.to_json() for P in enumerate_lambda_factors(base_graph("K33")).factors],
    "constrained": count_lambda_factors(R1, FactorConstraint.make(removed=[0, 1, 2], forbidden=[(3, 4)])),
    "lambda_pet": max_lambda_packing(pet)[0],
    "kappa_cube": vertex_connectivity(cube),
    "cuts_prism": [c.edges for c in enumerate_3_edge_cuts(prism)],
    "cyc5_R1": is_cyclically_k_edge_connected(R1, 5),
    "cyc6_R1": is_cyclically_k_edge_connected(R1, 6),
    "z2_R1": evaluate_claim(R1, "z2").verdict.value,
}
print(json.dumps(out))
"""


def run(flag):
    env = dict(os.environ, P3PACK_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True,
                          check=True, timeout=600)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_python_fallback_agrees_with_compiled():
    fast, slow = run("1"), run("0")
    assert fast.pop("backend") == "numba" and slow.pop("backend") == "python"
    assert fast == slow
    assert fast["count_prism"] == 15 and fast["count_R1"] == 63
    assert fast["cyc5_R1"] and not fast["cyc6_R1"]
