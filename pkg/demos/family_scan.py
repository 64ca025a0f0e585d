"""Scan the one-parameter triangle family.

Family member g in [2, 3] has vertices (g-3, (3-g)/2), (g-2, (2-g)/2),
(0, 1).  Over the rationals the verdict flips exactly at g = 7/3 and
g = 8/3; in characteristic 2 the member g = 13/6 becomes finitely generated
again.  The endpoints g = 2, 3 degenerate (a vertical edge appears) and the
scanner surfaces the g = 3 criterion disagreement as an error row.

Run:  python3 demos/family_scan.py
"""

from fractions import Fraction as F

from reeslab import FieldSpec, scan_family


def show(rows, title):
    print(f"== {title} ==")
    for row in rows:
        print(f"  g = {str(row.g):<5}  {row.status}")
    print()


def main():
    grid = [F(n, 12) for n in range(24, 37)]  # 2, 25/12, ..., 3
    show(scan_family(grid, FieldSpec(0)), "characteristic 0")
    show(scan_family([F(13, 6)], FieldSpec(2)), "characteristic 2, g = 13/6")
    show(scan_family([F(13, 6)], FieldSpec(5)), "characteristic 5, g = 13/6")


if __name__ == "__main__":
    main()
