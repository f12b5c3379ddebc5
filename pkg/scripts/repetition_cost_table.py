"""Print the repetition cost implied by the separability bound next to the NMR scaling proxy.

For each register size: the largest epsilon compatible with separability,
the resulting 1/epsilon repetitions, the 99%-confidence repetition count,
and the n/2^n NMR proxy with its 1/epsilon sample bound.
"""

from ppqc.entanglement import separability_bound
from ppqc.estimation import expected_repetitions, nmr_scaling_table, repetitions_for_confidence


def main(max_n: int = 16) -> None:
    nmr = {row.n: row for row in nmr_scaling_table(max_n)}
    print(f"{'n':>3} {'eps_sep':>12} {'1/eps_sep':>10} {'r99':>8} {'eps_nmr':>12} {'1/eps_nmr':>12}")
    for n in range(1, max_n + 1):
        eps = separability_bound(n)
        row = nmr[n]
        print(
            f"{n:>3} {eps:>12.6g} {expected_repetitions(eps):>10.0f} {repetitions_for_confidence(eps):>8d}"
            f" {row.epsilon:>12.6g} {row.sample_lower_bound:>12.6g}"
        )


if __name__ == "__main__":
    main()
