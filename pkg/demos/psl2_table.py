"""DivSyl at the defining characteristic for small PSL(2, q)."""

from divsyl.reduction import psl2_table

for row in psl2_table():
    bad = ", ".join(f"|H|={v['order']} nu={v['nu_p']}" for v in row["violations"]) or "none"
    print(f"q={row['q']:2d} p={row['p']}  |G|={row['order']:4d}  nu_p={row['nu_p']:3d}  "
          f"satisfied={row['satisfies']!s:5s}  failing subgroups: {bad}")
