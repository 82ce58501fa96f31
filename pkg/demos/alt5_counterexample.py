"""nu_3 of A5 and of its A4 subgroups, and the full DivSyl(3) report for A5."""

from divsyl import divsyl_check, make, nu

A5 = make("alt(5)")
print("nu_3(A5) =", nu(A5, 3))
print("nu_3(A4) =", nu(make("alt(4)"), 3))

rep = divsyl_check(A5, 3)
for c in rep.classes:
    mark = "" if c.divides else "   <- does not divide"
    print(f"  order {c.order:3d}  class size {c.class_size:3d}  nu_3 {c.nu_p:3d}{mark}")
print("DivSyl(3):", rep.satisfies)
