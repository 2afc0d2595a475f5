"""Time the compiled and pure-Python search kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import statistics
import time

import numpy as np

from rotabrace.clifford import cyclic_group, direct_product
from rotabrace.catalog import load_carrier
from rotabrace.kernels import available_backends
from rotabrace.rota_baxter import _search_plan, enumerate_rota_baxter
from rotabrace.weak_brace import brace_from_operator
from rotabrace.ybe import element_invariants, solution_from_brace


def _dihedral8():
    # elements r^i s^j encoded as 2*i + j
    def mul(x, y):
        i, j = divmod(x, 2)
        k, l = divmod(y, 2)
        return 2 * ((i + (k if j == 0 else -k)) % 4) + (j ^ l)

    from rotabrace.clifford import verify_clifford

    return verify_clifford([[mul(x, y) for y in range(8)] for x in range(8)], "D4")


def workloads():
    S3 = load_carrier("builtin:S3").carrier
    Z2 = cyclic_group(2)
    Z2cubed = direct_product(direct_product(Z2, Z2), Z2, "Z2^3")
    D4 = _dihedral8()
    out = []
    for S in (S3, cyclic_group(8), D4, Z2cubed):
        seq, cands = _search_plan(S)
        out.append((f"enumerate_rb {S.name}", "enumerate_rb", (S.table, S.inv, S.idem, seq, cands, -1)))
    for S in (D4, Z2cubed):
        out.append((f"enumerate_homs {S.name}", "enumerate_homs", (S.table, S.table, S.idem, S.idem, True, -1)))
    R = enumerate_rota_baxter(D4)[-1]
    r = solution_from_brace(brace_from_operator(D4, R))
    out.append(("braid_witness D4", "braid_witness", (r.first, r.second)))
    inv = element_invariants(r)
    cands = [[c for c in range(r.order) if inv[c] == inv[a]] for a in range(r.order)]
    out.append(("conjugating_bijection D4", "find_conjugating_bijection", (r.first, r.second, r.first, r.second, cands)))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn, fargs in workloads():
        times = {}
        results = {}
        for n in names:
            f = getattr(backends[n], fn)
            samples = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = f(*fargs)
                samples.append(time.perf_counter() - t0)
            times[n] = statistics.median(samples)
            results[n] = sorted(res) if isinstance(res, list) else res
        agree = len({repr(np.asarray(v, dtype=object).tolist()) for v in results.values()}) == 1
        line = f"{label:32s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times and "python" in times:
            line += f"  {times['python'] / max(times['cython'], 1e-9):8.1f}x"
        if not agree:
            line += "  RESULTS DIFFER"
        print(line)


if __name__ == "__main__":
    main()
