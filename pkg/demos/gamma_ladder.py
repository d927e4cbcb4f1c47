"""Walk up the gamma-matrix ladder and measure the conjugation signs.

For each m the script prints the worst deviation from the defining
relations, then solves for the antilinear intertwiner J and reports the
measured (eps, eps'') pair together with the KO branch it selects.
"""

import numpy as np

from nctwist import charge_conjugation, dagger, fro, gamma, grading_product, intertwiner_space


def relation_residual(data):
    eye = np.eye(data.dim)
    worst = 0.0
    for i, gi in enumerate(data.gammas):
        worst = max(worst, fro(gi - dagger(gi)))
        for j, gj in enumerate(data.gammas):
            target = 2.0 * eye if i == j else 0.0
            worst = max(worst, fro(gi @ gj + gj @ gi - target))
        worst = max(worst, fro(data.grading @ gi + gi @ data.grading))
    return max(worst, fro(data.grading - grading_product(data)))


def main():
    print("gamma ladder, dimensions 2^m")
    for m in range(1, 5):
        data = gamma(m)
        print(f"  m={m}: dim {data.dim}, relation residual {relation_residual(data):.2e}")

    print("\nself-intertwiners of the generator family")
    for m in (1, 2, 3):
        data = gamma(m)
        pairs = intertwiner_space(list(data.gammas), list(data.gammas))
        print(f"  m={m}: commuting-pair solution space has dimension {len(pairs)}")
    print("  (identity and grading: the family is irreducible on each chiral half)")

    print("\nantilinear conjugation J gamma = -gamma J")
    for m in (1, 2, 3):
        cc = charge_conjugation(m)
        print(
            f"  m={m}: eps={cc.eps:+d}, eps''={cc.eps_dblprime:+d},"
            f" branch {cc.branch()}, solution dim {cc.solution_dim}"
        )


if __name__ == "__main__":
    main()
