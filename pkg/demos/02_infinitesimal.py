# %% [markdown]
# Infinitesimal moments ride along as the eps part of a dual number.
#
# A pair (phi, phi') is a state with values in C[eps]/(eps^2).  Every moment
# computed with DualScalar inputs returns (phi(p^k), phi'(p^k)) in one pass.

# %%
from monotone_moments import AMomentData, DualScalar
from monotone_moments.closed_form import (
    SpanParams,
    anticommutator_moment,
    commutator_moment,
    inf_span_moment,
    span_moment,
)

x = DualScalar(0.5, 0.2)    # (phi(b), phi'(b))
x2 = DualScalar(1.0, -0.3)  # (phi(b^2), phi'(b^2))
a = AMomentData.from_sequence([0, 1, 0, 2, 0, 5], [0, 0.1, 0, 0.4, 0, 1.5])

# %%
params = SpanParams(1.5, 0.5j, x, x2)
for k in range(1, 7):
    dual_route = span_moment(params, k, a.power(k))
    explicit = inf_span_moment(params, k, a.power(k))
    print(k, dual_route.value, dual_route.eps, abs(dual_route.eps - explicit))

# %%
# ab + ba and i(ab - ba).  The commutator only sees the variance of b.
for k in (2, 4, 6):
    print(k, anticommutator_moment(x, x2, k, a.power(k)), commutator_moment(x, x2, k, a.power(k)))

# %%
# Centered b: phi(b) = phi'(b) = 0, phi(b^2) = phi'(b^2) = 1, phi(a^2) = 1.
print(anticommutator_moment(DualScalar(0, 0), DualScalar(1, 1), 2, DualScalar(1, 0)))
