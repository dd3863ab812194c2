"""Survey every labeled lattice (or meet-semilattice) up to a size.

Prints per-size counts of structures, Γ = Φ agreements and oracle checks.

    python3 scripts/enumerate_corpus.py --n 6 --signature lattice
"""
import argparse

from latgen import corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--signature", choices=corpus.SIGNATURES, default="lattice")
    args = ap.parse_args()
    print(f"{'n':>2} {'structures':>10} {'Γ=Φ':>6} {'mixed':>6} {'violations':>10} {'seconds':>8}")
    for n in range(1, args.n + 1):
        st = corpus.survey(corpus.structures(n, args.signature), args.signature)
        print(f"{n:>2} {st.structures:>10} {st.gamma_equals_phi:>6} {st.mixed_structures:>6} "
              f"{st.violations:>10} {st.elapsed:>8.2f}")


if __name__ == "__main__":
    main()
