"""Build the instance corpus, verify each code, certify its dual chain, and time every step.

    python scripts/certify_corpus.py [--ns 4 5 6] [--q 2] [--json report.json]
"""

import argparse
import json
import time

from regenbound.code_model import check_data_collection, check_exact_repair, extract_h_repair
from regenbound.dual_chain import build_chain, certify_all
from regenbound.instances import corpus


def certify_one(recipe) -> dict:
    t0 = time.perf_counter()
    code = recipe.build()
    ok = check_data_collection(code).passed and check_exact_repair(code).passed
    t1 = time.perf_counter()
    chain = build_chain(extract_h_repair(code))
    reports = certify_all(chain)
    t2 = time.perf_counter()
    p = code.params
    th6 = reports["theorem6"].find(s=1, t=p.n)
    return {
        "instance": recipe.label,
        "alpha": p.alpha,
        "beta": p.beta,
        "B": p.B,
        "verified": ok,
        "ranks": [chain.rank(t) for t in chain.ts],
        "theorem6_margin_s1_tn": str(th6.margin),
        "checks": sum(len(r.checks) for r in reports.values()),
        "violations": {k: len(r.violations) for k, r in reports.items()},
        "verify_s": round(t1 - t0, 4),
        "certify_s": round(t2 - t1, 4),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--json", help="also write the rows as JSON")
    args = ap.parse_args()

    rows = [certify_one(r) for r in corpus(tuple(args.ns), args.q)]
    head = f"{'instance':<16}{'a':>4}{'b':>4}{'B':>5}  {'ranks':<18}{'margin':>8}{'checks':>8}{'viol':>6}{'secs':>8}"
    print(head)
    for r in rows:
        print(
            f"{r['instance']:<16}{r['alpha']:>4}{r['beta']:>4}{r['B']:>5}  {str(r['ranks']):<18}"
            f"{r['theorem6_margin_s1_tn']:>8}{r['checks']:>8}{sum(r['violations'].values()):>6}"
            f"{r['verify_s'] + r['certify_s']:>8.3f}"
        )
    total = sum(r["verify_s"] + r["certify_s"] for r in rows)
    bad = [r["instance"] for r in rows if not r["verified"] or any(r["violations"].values())]
    print(f"total {total:.2f}s; {'all pass' if not bad else 'FAILING: ' + ', '.join(bad)}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
