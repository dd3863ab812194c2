"""Window report for the ω+1 or ω²+1 family: Γ, Φ and per-element evidence.

    python3 scripts/omega_sq_window.py --family omega_sq --bound 10
"""
import argparse

from latgen.config import ClosureConfig, Completeness
from latgen.symbolic.claims import window_report
from latgen.symbolic.elements import Family


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=[f.value for f in Family], default="omega_sq")
    ap.add_argument("--bound", type=int, default=10)
    ap.add_argument("--trials", type=int, default=300)
    ap.add_argument("--conventions", choices=["standard", "none"], default="standard")
    ap.add_argument("--completeness", choices=["countable", "join-complete"], default="countable")
    args = ap.parse_args()
    cfg = ClosureConfig.lattice(args.conventions, Completeness(args.completeness))
    wr = window_report(Family(args.family), args.bound, cfg, trials=args.trials)
    print(f"Γ ({len(wr.gamma)}): {sorted(map(str, wr.gamma))}")
    print(f"Φ ({len(wr.phi)}): {sorted(map(str, wr.phi))}")
    print(f"relative generators inside Φ: {sorted(map(str, set(wr.relative_generators) & wr.phi))}")
    print(f"formulas match: Γ {wr.gamma_matches_formula}, Φ {wr.phi_matches_formula}; "
          f"catalog maximal: {wr.catalog_all_maximal}; {wr.elapsed:.2f} s")
    print("ok" if wr.ok else "FAILED")


if __name__ == "__main__":
    main()
