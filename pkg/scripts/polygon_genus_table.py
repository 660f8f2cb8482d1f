"""Genus of the real locus over an m-gon, two ways.

The closed formula g = 1 + 2^(m-3)(m-4) against the independent
Euler-characteristic cell count chi = 2 - 2g, for m = 3..12.
"""

from hamlag import build, euler_characteristic_oracle, polygon_genus, polygon_recipe


def main():
    print(f"{'m-gon':<8} {'genus':<10} {'chi (cells)':<12} {'2 - 2g':<8} agree")
    for sides in range(3, 13):
        genus = polygon_genus(sides)
        chi = euler_characteristic_oracle(build(polygon_recipe(sides)))
        print(f"{sides:<8} {genus:<10} {chi:<12} {2 - 2 * genus:<8} {chi == 2 - 2 * genus}")


if __name__ == "__main__":
    main()
