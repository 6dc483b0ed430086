"""Compare the gmpy2 and pure-Python rational backends on the exact kernels.

Each backend runs in a fresh interpreter (the backend is chosen at import),
timing r0 over every maximal parabolic of E8, F4 and C5 plus a batch of jet
compositions.

    python3 benchmarks/bench_rational.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from rootreg import BACKEND
from rootreg.rootsys import build_root_system, make_restricted
from rootreg.parabolic import standard_parabolic
from rootreg.regularity import r0
from rootreg.subres import JetPolynomial, LyapunovWeights, jet_compose, jet_invert, subresonant_basis
from rootreg._rational import q

def lp_kernel():
    for t, k in (("E8", 8), ("F4", 4), ("C", 5)):
        system = build_root_system(t, k)
        data = make_restricted(system, len(system.roots) + k)
        for i in range(1, k + 1):
            r0(standard_parabolic(data, {i}))

def jet_kernel():
    rng = random.Random(1)
    W = LyapunovWeights([-4, -2, -1])
    basis, _ = subresonant_basis(W, degree=4)
    for _ in range(200):
        comps = [{} for _ in range(3)]
        for j, a in basis:
            comps[j][a] = q(rng.randint(-5, 5), rng.randint(1, 7))
        for j in range(3):
            comps[j][tuple(int(i == j) for i in range(3))] = q(1)
        J = JetPolynomial(comps, 4, in_weights=W, out_weights=W)
        jet_compose(jet_invert(J), J)

out = {"backend": BACKEND}
for name, fn in (("lp", lp_kernel), ("jets", jet_kernel)):
    t = time.perf_counter()
    fn()
    out[name] = time.perf_counter() - t
print(json.dumps(out))
"""


def run(pure: bool):
    env = dict(os.environ)
    if pure:
        env["ROOTREG_PURE"] = "1"
    else:
        env.pop("ROOTREG_PURE", None)
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = {}
    for pure in (False, True):
        runs = [run(pure) for _ in range(args.repeat)]
        backend = runs[0]["backend"]
        rows[backend] = {k: min(r[k] for r in runs) for k in ("lp", "jets")}
    for backend, t in rows.items():
        print(f"{backend:<9} lp {t['lp']:.3f}s  jets {t['jets']:.3f}s")
    if "gmpy2" in rows and "fraction" in rows:
        for k in ("lp", "jets"):
            print(f"speedup {k}: {rows['fraction'][k] / rows['gmpy2'][k]:.1f}x")


if __name__ == "__main__":
    main()
