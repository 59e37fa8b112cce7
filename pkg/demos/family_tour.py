"""Tour of the two recurrence families of negative curves.

For every integer K >= 3 the Pell-type equation (M+N)^2 = KMN + 1 has a
ladder of solutions (M_n, N_n); each rung carries two curves, one on an
integral triangle IT_K(M, N) and one on a rational triangle RT_K(M, N),
produced from the previous rung by exact polynomial division.
"""

from tricurves.families import (
    edge_coefficients,
    family_triangle,
    mn_pairs,
    xi,
)
from tricurves.laurent import vanishing_order


def main() -> None:
    for K in (3, 4, 5):
        sols = mn_pairs(K, 3)
        print(f"K = {K}: solutions "
              + ", ".join(f"(M,N)=({s.M},{s.N})" for s in sols))
        for sol in sols[1:]:
            f_int = xi(K, sol.n, "int")
            f_rat = xi(K, sol.n, "rat")
            it = family_triangle(K, sol.M, sol.N, "IT")
            print(f"  n={sol.n}: IT curve has {len(f_int)} terms, "
                  f"order {vanishing_order(f_int)} = M+N, "
                  f"triangle slopes {it.slopes}; "
                  f"RT curve has {len(f_rat)} terms, "
                  f"order {vanishing_order(f_rat)} = M")
        print()

    print("Edge coefficients for K = 4 (doubly computed, direct reading")
    print("vs sign recurrence; a disagreement would raise):")
    for row in edge_coefficients(4, 6).rows:
        print(f"  n={row.n}: delta={row.delta:+d} a={row.a:+d} "
              f"a'={row.a_prime:+d} c={row.c:+d} c'={row.c_prime:+d} "
              f"b={row.b:+d}")


if __name__ == "__main__":
    main()
