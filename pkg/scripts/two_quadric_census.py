"""Census of the two-quadric family realised by the standard construction.

For every (k, p, q) with p + q <= 8 the script builds the realisation,
verifies the embedding, and prints the classified total space together with
the normalised triple the classifier reports.
"""

from hamlag import classify_two_quadrics, embedding_criterion_quadrics, validate
from hamlag.quadrics import QuadricSystem


def realisation(k: int, p: int, q: int) -> QuadricSystem:
    row1 = [1] * p + [0] * q
    row2 = [1] * k + [0] * (p - k) + [1] * q
    return QuadricSystem.from_rows([row1, row2], [1, 2])


def main():
    print(f"{'(k,p,q)':<12} {'real locus':<14} {'total space':<28} embeds")
    for p in range(1, 8):
        for q in range(1, 9 - p):
            for k in range(0, p + 1):
                system = realisation(k, p, q)
                assert validate(system).nonempty_nondegenerate
                embeds = embedding_criterion_quadrics(system).embeds
                report, _ = classify_two_quadrics(system)
                print(
                    f"({k},{p},{q})".ljust(12),
                    report.r_topology.label.ljust(14),
                    report.n_topology.label.ljust(28),
                    embeds,
                )


if __name__ == "__main__":
    main()
