"""Diamond sections and Mori-Dream-Space certificate chains.

A diamond is the set of slope pairs at which a fixed polynomial still cuts
a curve of nonpositive self-intersection.  Certificates walk along a
vertical or horizontal line until the home diamond meets another one; at
the meeting point both curves have self-intersection zero and intersection
number zero, which is exactly the disjointness needed for the MDS property.
"""

from fractions import Fraction as F

from tricurves.families import family_triangle, mn_pairs
from tricurves.mds import (
    certify_mds,
    diamond_section,
    family_diamond,
    one_minus_y_diamond,
    special_diamond,
)
from tricurves.trispace import SlopePair


def main() -> None:
    home = one_minus_y_diamond()
    print("Vertical sections of the 1-y diamond (t-intervals at fixed s):")
    for s in (F(3, 2), F(2), F(5, 2)):
        print(f"  s={s}: {diamond_section(home, 'vertical', s)}")
    print()

    print("Explicit D-curve certificates at integer right slope:")
    for s, t in ((F(3, 2), 5), (F(5, 2), 5), (F(2), 4)):
        res = certify_mds(SlopePair(s, t), home)
        print(f"  ({s}, {t}): {res.note}, [C].[D] = {res.orthogonality}")
    print()

    print("Chains from family-diamond centers to the 1-y region:")
    for K, n in ((4, 1), (4, 2), (5, 1)):
        d = family_diamond(K, n, "IT")
        # the center sits on the line t = K
        sol = mn_pairs(K, n)[n]
        center = family_triangle(K, sol.M, sol.N, "IT").slopes
        res = certify_mds(center, d, home)
        print(f"  IT_{K}({sol.M},{sol.N}) center {center} -> "
              f"meeting point {res.point}")
    print()

    print("The special curve of P(8,15,43) (m = 9, deficiency 1):")
    res = certify_mds(SlopePair(F(8, 5), F(15, 4)), special_diamond(4),
                      family_diamond(4, 1, "RT"))
    print(f"  certificate at {res.point}: {res.note}")


if __name__ == "__main__":
    main()
