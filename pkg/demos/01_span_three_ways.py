# %% [markdown]
# Moments of p = alpha*ab + beta*ba, computed three ways.
#
# a and b are monotone independent (a before b).  Only phi(b), phi(b^2) and
# the moments of a enter.

# %%
from monotone_moments import AMomentData, BFamilyMoments, NCPolynomial, parse_word
from monotone_moments.closed_form import SpanParams, gamma_of, is_degenerate, span_moment
from monotone_moments.engine import eval_poly_moment
from monotone_moments.lift import lift_span_moment

a = AMomentData.semicircle(12)
params = SpanParams(alpha=2, beta=3, b_mean=1, b_second=2)
b = BFamilyMoments.from_table({"b": params.b_mean, "bb": params.b_second})
p = NCPolynomial({parse_word("ab"): 2, parse_word("ba"): 3})

print("gamma =", gamma_of(params).value)

# %%
# Brute force expands p^k into 2^k words; the closed form and the 2x2 transfer
# matrix need O(k) work.  All three agree.
print(f"{'k':>2} {'closed form':>14} {'expansion':>14} {'lift':>14}")
for k in range(1, 11):
    ak = a.power(k)
    row = (span_moment(params, k, ak), eval_poly_moment(p, k, a, b), lift_span_moment(params, k, ak))
    print(f"{k:>2} " + " ".join(f"{x.value.real:>14.6g}" for x in row))

# %%
# gamma = 0 is a removable singularity.  alpha=1, beta=-1 with zero variance
# of b makes p vanish in distribution.
flat = SpanParams(1, -1, 1, 1)
print("degenerate:", is_degenerate(flat))
print([span_moment(flat, k, a.power(k)).value for k in range(1, 9)])
