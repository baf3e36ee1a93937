# %% [markdown]
# p = b1 a c1 a b1 + b2 a c2 a b2
#
# With a before the b's, p^k has the moments of mu_{a^2}^k times the k-th
# moment of a law on at most three atoms: theta + zeta, theta - zeta and 0.
# The mass at 0 vanishes exactly when (1, b1, b2) has a singular Gram matrix,
# as happens for the Catalan data with n = m.

# %%
import numpy as np

from monotone_moments import AMomentData
from monotone_moments.cli import general_instance
from monotone_moments.closed_form import two_atom_law, wigner_general_poly_limit
from monotone_moments.engine import eval_poly_moment, structured_moment

base = AMomentData.symmetric_bernoulli(12)  # phi(a^(2k)) = 1

for data in [(2, 2, 2, 1, 1, 1, 1), (2, 14, 5, 1, 2, 1, 1)]:
    law = two_atom_law(*data, base=base)
    terms, poly, b = general_instance(*data)
    print("data", data)
    print(f"  atoms {np.round(law.atoms, 4)}, masses {law.weight.real:.4f} {law.lower_weight.real:.4f} "
          f"{law.null_weight.real:.4f}")
    for k in range(1, 5):
        print(f"  k={k}: law {law.moment(k).real:10.2f}  structured {structured_moment(terms, k, base, b).real:10.2f}"
              f"  expansion {eval_poly_moment(poly, k, base, b).value.real:10.2f}"
              f"  two atoms only {law.unit_mass_moment(k).real:10.2f}")

# %%
# A two-atom fit with total mass one (no atom at 0) misses the second
# moment once the Gram matrix is nonsingular: 77 against 78 above.
#
# Masses stay in [0, 1] across the Catalan family.
worst = min(
    min(w.real for w in (law.weight, law.lower_weight, law.null_weight))
    for law in (wigner_general_poly_limit(n, m, h, s) for n in range(1, 6) for m in range(1, 6)
                for h in range(1, 6) for s in range(1, 6))
)
print("smallest mass over n,m,h,s <= 5:", round(worst, 6))
