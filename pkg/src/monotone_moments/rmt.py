"""Wigner-ensemble Monte Carlo for partial-trace moments.

The partial trace of an ``N x N`` matrix is the normalized trace of its top-left
``N0 x N0`` corner.  For independent Wigner ``A`` and ``B``, the pair
``(T_{Q(A)}, B)`` with ``T_X = jX(1-j) + (1-j)Xj`` is asymptotically monotone
independent under the partial trace, so sample means of ``psi(P^k)`` can be
compared with the closed-form limits.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import closed_form as cf
from .core import AMomentData, BFamilyMoments, Family, NCLetter, NCPolynomial, NCWord, catalan
from .engine import eval_poly_moment

__all__ = [
    "EntryLaw",
    "Ensemble",
    "MCEstimate",
    "PolySpec",
    "build_matrix",
    "WignerConfig",
    "mc_moment_estimate",
    "mc_moment_estimates",
    "partial_trace",
    "projector",
    "sample_wigner",
    "t_operator",
    "trace_moment_estimates",
]

FACTORS = ("T", "B", "J", "K")  # T_{Q(A)}, B, j, 1 - j


class Ensemble(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class EntryLaw(str, enum.Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"


@dataclass(frozen=True)
class WignerConfig:
    """Ensemble descriptor.  Entries have unit variance before the ``1/sqrt(N)`` scaling."""

    ensemble: Ensemble = Ensemble.COMPLEX
    n: int = 600
    n0: int = 30
    samples: int = 400
    entry_law: EntryLaw = EntryLaw.GAUSSIAN
    seed: int = 0
    max_n: int = 4096
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ensemble", Ensemble(self.ensemble))
        object.__setattr__(self, "entry_law", EntryLaw(self.entry_law))
        if not 1 <= self.n0 <= self.n:
            raise ValueError(f"need 1 <= n0 <= n, got n0={self.n0}, n={self.n}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.ensemble is Ensemble.COMPLEX and self.entry_law is EntryLaw.RADEMACHER:
            raise ValueError("rademacher entries are only available for the real ensemble")
        if self.n > self.max_n:
            raise MemoryError(f"matrix size {self.n} exceeds the configured cap {self.max_n}")


def _rng(config: WignerConfig, index: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(index, stream)))


def sample_wigner(config: WignerConfig, index: int, stream: int = 0) -> np.ndarray:
    """Hermitian Wigner matrix determined by ``(config.seed, index, stream)`` only."""
    rng = _rng(config, index, stream)
    n = config.n
    if config.entry_law is EntryLaw.RADEMACHER:
        g = 2.0 * rng.integers(0, 2, size=(n, n)) - 1.0
    else:
        g = rng.standard_normal((n, n))
    diag = g.diagonal().copy()
    upper = np.triu(g, 1)
    w = np.empty((n, n), dtype=complex)
    if config.ensemble is Ensemble.REAL:
        w.real = upper + upper.T
        w.imag = 0.0
    else:
        # entry (i, j), i < j, is (g[i, j] + 1j * g[j, i]) / sqrt(2)
        lower_t = np.tril(g, -1).T
        w.real = (upper + upper.T) / math.sqrt(2.0)
        w.imag = (lower_t - lower_t.T) / math.sqrt(2.0)
    w.real[np.diag_indices(n)] = diag
    w /= math.sqrt(n)
    return w


def projector(n: int, n0: int) -> np.ndarray:
    """``j = sum_{i < n0} E_ii``."""
    if not 1 <= n0 <= n:
        raise ValueError(f"need 1 <= n0 <= n, got n0={n0}, n={n}")
    d = np.zeros(n)
    d[:n0] = 1.0
    return np.diag(d)


def t_operator(matrix: np.ndarray, n0: int) -> np.ndarray:
    """Keep the off-diagonal blocks of ``matrix`` relative to the first ``n0`` coordinates."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("t_operator needs a square matrix")
    if not 1 <= n0 <= matrix.shape[0]:
        raise ValueError(f"need 1 <= n0 <= n, got n0={n0}, n={matrix.shape[0]}")
    out = matrix.copy()
    out[:n0, :n0] = 0
    out[n0:, n0:] = 0
    return out


def partial_trace(matrix: np.ndarray, n0: int) -> complex:
    """``(1/n0) sum_{i < n0} matrix[i, i]`` (one sample; the mean over samples gives ``psi_N``)."""
    matrix = np.asarray(matrix)
    if not 1 <= n0 <= matrix.shape[0]:
        raise ValueError(f"need 1 <= n0 <= n, got n0={n0}, n={matrix.shape[0]}")
    return complex(np.trace(matrix[:n0, :n0]) / n0)


# ---------------------------------------------------------------------------
# Polynomial specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolySpec:
    """``P = sum_t coeff_t * F_t1 F_t2 ...`` over the generators ``T_{Q(A)}, B, j, 1-j``.

    ``q`` holds the coefficients of ``Q`` (``q[i]`` multiplies ``A^i``); the
    constant term must be zero.
    """

    terms: tuple[tuple[complex, tuple[str, ...]], ...]
    q: tuple[float, ...] = (0.0, 1.0)
    kind: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        terms = tuple((complex(c), tuple(f)) for c, f in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "q", tuple(self.q))
        if not terms:
            raise ValueError("a PolySpec needs at least one term")
        for _, factors in terms:
            if not factors:
                raise ValueError("empty product in PolySpec")
            bad = set(factors) - set(FACTORS)
            if bad:
                raise ValueError(f"unknown generators {sorted(bad)}; use {FACTORS}")
        if self.uses("T"):
            if len(self.q) < 2 or self.q[0] != 0 or not any(self.q[1:]):
                raise ValueError("Q must be nonconstant with zero constant term")

    @classmethod
    def t_operator(cls, m: int = 1) -> "PolySpec":
        return cls(((1.0, ("T",)),), q=_monomial(m), kind="t", params={"m": m})

    @classmethod
    def span(cls, alpha: complex = 1.0, m: int = 1) -> "PolySpec":
        alpha = complex(alpha)
        return cls(
            ((alpha, ("T", "B")), (alpha.conjugate(), ("B", "T"))),
            q=_monomial(m),
            kind="span",
            params={"alpha": alpha, "m": m},
        )

    @classmethod
    def general(cls, n: int = 1, m: int = 1, h: int = 1, s: int = 1) -> "PolySpec":
        if min(n, m, h, s) < 1:
            raise ValueError("n, m, h, s must all be >= 1")

        def word(outer, inner):
            return ("B",) * (2 * outer) + ("T",) + ("B",) * (2 * inner) + ("T",) + ("B",) * (2 * outer)

        return cls(
            ((1.0, word(n, h)), (1.0, word(m, s))),
            kind="general",
            params={"n": n, "m": m, "h": h, "s": s},
        )

    def uses(self, generator: str) -> bool:
        return any(generator in f for _, f in self.terms)

    @property
    def degree(self) -> int:
        return max(len(f) for _, f in self.terms)

    # -- predictions -------------------------------------------------------

    def t_variance(self) -> float:
        """Limit variance of ``Q(A)`` for semicircular ``A``."""
        def sc(j):
            return catalan(j // 2) if j % 2 == 0 else 0

        first = sum(c * sc(i) for i, c in enumerate(self.q))
        second = sum(ci * cj * sc(i + j) for i, ci in enumerate(self.q) for j, cj in enumerate(self.q))
        return float(np.real(second - first**2))

    def prediction(self, k: int) -> complex | None:
        """Closed-form limit of ``psi_N(P^k)``; ``None`` when no limit is available."""
        if self.kind == "t":
            return complex(cf.t_operator_limit_moment(self.params["m"], k))
        if self.kind == "span":
            return complex(cf.wigner_ls_limit_moment(self.params["alpha"], self.params["m"], k))
        if self.kind == "general":
            p = self.params
            return cf.wigner_general_poly_limit(p["n"], p["m"], p["h"], p["s"]).moment(k)
        return self.engine_prediction(k)

    def nc_polynomial(self) -> NCPolynomial:
        """The spec with ``T -> a`` and ``B -> b``; only defined without ``j`` factors."""
        if self.uses("J") or self.uses("K"):
            raise ValueError("specs with projector factors have no monotone limit polynomial")
        letter = {"T": NCLetter(Family.A), "B": NCLetter(Family.B)}
        return NCPolynomial([(NCWord(tuple(letter[f] for f in fs)), c) for c, fs in self.terms])

    def engine_prediction(self, k: int) -> complex | None:
        """Limit moment via the brute-force engine: ``a`` two-point with the T-variance, ``b`` semicircular."""
        if self.uses("J") or self.uses("K"):
            return None
        horizon = k * self.degree
        a = AMomentData.symmetric_bernoulli(horizon, variance=self.t_variance())
        b = BFamilyMoments.semicircle(horizon)
        return eval_poly_moment(self.nc_polynomial(), k, a, b).value


def _monomial(m: int) -> tuple[float, ...]:
    if m < 1:
        raise ValueError("power m must be >= 1")
    return (0.0,) * m + (1.0,)


def _q_of(q: Sequence[complex], a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    power = None
    for i, c in enumerate(q):
        if i == 0:
            continue
        power = a if power is None else power @ a
        if c != 0:
            out = out + c * power
    return out


def _generators(spec: PolySpec, config: WignerConfig, index: int) -> dict[str, np.ndarray]:
    gens: dict[str, np.ndarray] = {}
    if spec.uses("T"):
        a = sample_wigner(config, index, stream=0)
        gens["T"] = t_operator(_q_of(spec.q, a), config.n0)
    if spec.uses("B"):
        gens["B"] = sample_wigner(config, index, stream=1)
    return gens


def build_matrix(spec: PolySpec, gens: dict[str, np.ndarray], n0: int) -> np.ndarray:
    """Dense ``P`` from generator matrices (``j`` and ``1 - j`` built from ``n0``)."""
    n = next(iter(gens.values())).shape[0] if gens else None
    if n is None:
        raise ValueError("need at least one of T or B")
    mats = dict(gens)
    mats["J"] = projector(n, n0)
    mats["K"] = np.eye(n) - mats["J"]
    out = np.zeros((n, n), dtype=complex)
    for c, factors in spec.terms:
        prod = mats[factors[0]].astype(complex)
        for f in factors[1:]:
            prod = prod @ mats[f]
        out += c * prod
    return out


def _apply_right(x: np.ndarray, spec: PolySpec, gens: dict[str, np.ndarray], n0: int) -> np.ndarray:
    """``x @ P`` without forming ``P``."""
    out = np.zeros_like(x)
    for c, factors in spec.terms:
        y = x
        for f in factors:
            if f == "J":
                y = y.copy()
                y[:, n0:] = 0
            elif f == "K":
                y = y.copy()
                y[:, :n0] = 0
            else:
                y = y @ gens[f]
        out += c * y
    return out


def _sample_psi(spec: PolySpec, config: WignerConfig, kmax: int, index: int) -> np.ndarray:
    gens = _generators(spec, config, index)
    n0 = config.n0
    rows = np.eye(n0, config.n, dtype=complex)
    psi = np.empty(kmax, dtype=complex)
    for k in range(kmax):
        rows = _apply_right(rows, spec, gens, n0)
        psi[k] = np.trace(rows[:, :n0]) / n0
    return psi


@dataclass(frozen=True)
class MCEstimate:
    k: int
    mean: complex
    std_error: float
    samples: int
    prediction: complex | None
    abs_gap: float | None

    def within(self, atol: float = 0.0, rtol: float = 0.0, nsigma: float = 3.0) -> bool:
        """``abs_gap <= max(atol, rtol * |prediction|, nsigma * std_error)``."""
        if self.abs_gap is None:
            return False
        bound = max(atol, rtol * abs(self.prediction), nsigma * self.std_error)
        return self.abs_gap <= bound


def _summarize(values: np.ndarray, ks: Sequence[int], predictions) -> list[MCEstimate]:
    m = values.shape[0]
    out = []
    for col, (k, pred) in enumerate(zip(ks, predictions)):
        v = values[:, col]
        mean = complex(np.mean(v))
        se = float(np.sqrt(np.sum(np.abs(v - mean) ** 2) / (m - 1) / m)) if m > 1 else 0.0
        gap = None if pred is None else abs(mean - pred)
        out.append(MCEstimate(k, mean, se, m, None if pred is None else complex(pred), gap))
    return out


def _collect(fn, config: WignerConfig) -> np.ndarray:
    indices = range(config.samples)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(fn, indices))
    else:
        rows = [fn(i) for i in indices]
    return np.stack(rows)  # ordered by sample index


def mc_moment_estimates(spec: PolySpec, ks: Sequence[int], config: WignerConfig) -> list[MCEstimate]:
    """Estimates of ``psi_N(P^k)`` for each ``k`` in ``ks`` from one shared set of samples."""
    ks = list(ks)
    if not ks or min(ks) < 1:
        raise ValueError("moment orders must be >= 1")
    kmax = max(ks)
    table = _collect(lambda i: _sample_psi(spec, config, kmax, i), config)
    values = table[:, [k - 1 for k in ks]]
    return _summarize(values, ks, [spec.prediction(k) for k in ks])


def mc_moment_estimate(spec: PolySpec, k: int, config: WignerConfig) -> MCEstimate:
    return mc_moment_estimates(spec, [k], config)[0]


def _sample_traces(config: WignerConfig, kmax: int, index: int) -> np.ndarray:
    w = sample_wigner(config, index)
    powers = [np.eye(config.n, dtype=complex), w]
    while len(powers) <= (kmax + 1) // 2:
        powers.append(powers[-1] @ w)
    out = np.empty(kmax, dtype=complex)
    for k in range(1, kmax + 1):
        i = k // 2
        # Tr(W^i W^(k-i)) without forming the product
        out[k - 1] = np.sum(powers[i] * powers[k - i].T) / config.n
    return out


def trace_moment_estimates(config: WignerConfig, ks: Sequence[int]) -> list[MCEstimate]:
    """Sample means of ``(1/N) Tr(W^k)`` against the semicircle moments."""
    ks = list(ks)
    kmax = max(ks)
    table = _collect(lambda i: _sample_traces(config, kmax, i), config)
    preds = [float(catalan(k // 2)) if k % 2 == 0 else 0.0 for k in ks]
    return _summarize(table[:, [k - 1 for k in ks]], ks, preds)
