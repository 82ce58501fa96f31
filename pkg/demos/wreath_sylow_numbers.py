"""Sylow 2-numbers of A5 wr C2 and S5 wr C2 against |S|_{2'}^(k-1) nu_2(L)."""

from divsyl import make
from divsyl.reduction import numpwreath_check

C2, A5 = make("cyclic(2)"), make("alt(5)")
for L in ("alt(5)", "sym(5)"):
    v = numpwreath_check(make(L), A5, C2, 2)
    d = v.details
    print(f"{L} wr C2: nu_2 = {d['nu_G']}, predicted {d['S_p_prime']}^{d['k'] - 1} * {d['nu_L']}"
          f" = {d['predicted']}")
