# %% [markdown]
# Partial traces of Wigner polynomials.
#
# T_A keeps the off-diagonal blocks of A relative to the top-left N0 corner.
# Under psi_N (normalized trace of that corner) the pair (T_A, B) becomes
# monotone independent as N grows.  This script is smaller than the test-suite
# runs; bump N and M for tighter numbers.

# %%
import time

from monotone_moments.rmt import PolySpec, WignerConfig, mc_moment_estimates, trace_moment_estimates

config = WignerConfig(n=300, n0=10, samples=100, seed=1)

print(trace_moment_estimates(config, [2, 4]))

# %%
for spec, ks in [(PolySpec.t_operator(1), [1, 2, 4]), (PolySpec.span(2j, 1), [2]), (PolySpec.general(1, 1, 1, 1), [1, 2])]:
    t0 = time.perf_counter()
    for est in mc_moment_estimates(spec, ks, config):
        print(f"{spec.kind:8s} k={est.k}  mean {est.mean.real:8.4f} +- {est.std_error:.4f}   limit {est.prediction.real:g}")
    print(f"          {time.perf_counter() - t0:.1f} s")

# %%
# Corrections scale with N0/N.  Shrinking the corner pulls the second moment
# of the general polynomial toward its limit 8.
for n, n0 in [(200, 20), (400, 10), (800, 5)]:
    (est,) = mc_moment_estimates(PolySpec.general(1, 1, 1, 1), [2], WignerConfig(n=n, n0=n0, samples=60, seed=3))
    print(f"N={n:4d} N0={n0:3d}  {est.mean.real:.3f} +- {est.std_error:.3f}")
