"""Print product reports for a few factor families, one per regime.

    python scripts/product_regimes.py
"""

from coxdim.product import FactorProfile, product_dimension_report

F = FactorProfile.cyclic

FAMILIES = {
    "two coprime": [F(3, 3), F(3, 5)],
    "three coprime": [F(3, 3), F(3, 5), F(3, 7)],
    "coprime, repeated": [F(3, 3, 2), F(3, 5)],
    "common divisor": [F(3, 3, 2)],
    "mixed": [F(3, 6), F(3, 10), F(3, 15)],
    "mixed dimensions": [F(2, 3), F(4, 5)],
}


def main():
    for name, profiles in FAMILIES.items():
        rep = product_dimension_report(profiles)
        exact = f" exact={rep.vcd_exact}" if rep.vcd_exact is not None else ""
        print(f"{name:<18} regime={rep.regime:<15} vcd<={rep.vcd_upper}{exact} band={rep.band_bound} cd={rep.bredon_cd} top={rep.top_group}")


if __name__ == "__main__":
    main()
