"""Explicit moment formulas.

Covers the span ``alpha*ab + beta*ba`` (plain and infinitesimal, through
``DualScalar`` arithmetic), its commutator and anti-commutator cases, the
law of ``b1 a c1 a b1 + b2 a c2 a b2``, and the limit moments of the Wigner
models built from these.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from math import comb

from .core import AMomentData, DualScalar, as_dual, catalan

__all__ = [
    "DegenerateSpanError",
    "SpanParams",
    "TwoAtomLaw",
    "anticommutator_moment",
    "catalan_inequality_holds",
    "centered_span_moment",
    "commutator_moment",
    "d_m",
    "gamma_of",
    "inf_span_moment",
    "is_degenerate",
    "span_closed_form",
    "span_moment",
    "span_radicand",
    "t_operator_base",
    "t_operator_limit_moment",
    "two_atom_law",
    "wigner_general_poly_limit",
    "wigner_ls_limit_moment",
    "wigner_ls_limit_moment_abs",
]


class DegenerateSpanError(ArithmeticError):
    """``gamma`` vanishes (to scale-relative precision); use the limit formula."""


@dataclass(frozen=True)
class SpanParams:
    alpha: complex
    beta: complex
    b_mean: DualScalar = field(default_factory=DualScalar)
    b_second: DualScalar = field(default_factory=lambda: DualScalar(1.0))

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "b_mean", as_dual(self.b_mean))
        object.__setattr__(self, "b_second", as_dual(self.b_second))
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("alpha and beta must be nonzero")


# ---------------------------------------------------------------------------
# Linear span of ab and ba
# ---------------------------------------------------------------------------


def span_radicand(params: SpanParams) -> DualScalar:
    """``(alpha - beta)^2 X^2 + 4 alpha beta X2`` with ``X, X2`` dual first/second moments."""
    al, be = params.alpha, params.beta
    return (al - be) ** 2 * params.b_mean**2 + 4 * al * be * params.b_second


def _gamma_threshold(params: SpanParams) -> float:
    al, be = params.alpha, params.beta
    x = params.b_mean.value
    return 1e-12 * (abs(al - be) ** 2 * abs(x) ** 2 + 4 * abs(al * be) * abs(params.b_second.value) + 1)


def is_degenerate(params: SpanParams) -> bool:
    return abs(cmath.sqrt(span_radicand(params).value)) < _gamma_threshold(params)


def gamma_of(params: SpanParams) -> DualScalar:
    """``Gamma = (gamma, omega / gamma)``, principal branch.

    Raises ``DegenerateSpanError`` when ``|gamma|`` is below the scale-relative
    threshold.
    """
    if is_degenerate(params):
        raise DegenerateSpanError("gamma vanishes for these span parameters")
    return span_radicand(params).sqrt()


def span_closed_form(sum_x: DualScalar, gamma: DualScalar, k: int, a_k: DualScalar) -> DualScalar:
    """``a_k / (2^(k+1) G) * [(S + G)^(k+1) - (S - G)^(k+1)]`` with ``S = (alpha+beta) X``.

    Odd in ``G``, so either square-root branch gives the same result.
    """
    sum_x, gamma, a_k = as_dual(sum_x), as_dual(gamma), as_dual(a_k)
    bracket = (sum_x + gamma) ** (k + 1) - (sum_x - gamma) ** (k + 1)
    return a_k * bracket / (2 ** (k + 1) * gamma)


def _span_series(sum_x: DualScalar, radicand: DualScalar, k: int, a_k: DualScalar) -> DualScalar:
    # Same expression expanded as a polynomial in gamma^2; finite at gamma = 0.
    total = DualScalar()
    for j in range(1, k + 2, 2):
        total = total + comb(k + 1, j) * sum_x ** (k + 1 - j) * radicand ** ((j - 1) // 2)
    return a_k * total / 2**k


def span_moment(params: SpanParams, k: int, a_k) -> DualScalar:
    """``(phi(p^k), phi'(p^k))`` for ``p = alpha*ab + beta*ba``; ``a_k = (phi(a^k), phi'(a^k))``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a_k = as_dual(a_k)
    sum_x = (params.alpha + params.beta) * params.b_mean
    if is_degenerate(params):
        # Removable singularity: at gamma = 0 this is (k+1) (S/2)^k a_k, plus
        # the first-order contribution of the radicand's infinitesimal part.
        return _span_series(sum_x, span_radicand(params), k, a_k)
    return span_closed_form(sum_x, gamma_of(params), k, a_k)


def inf_span_moment(params: SpanParams, k: int, a_k) -> complex:
    """``phi'(p^k)`` written out in scalar form (no dual arithmetic)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    a_k = as_dual(a_k)
    al, be = params.alpha, params.beta
    x, y = params.b_mean.value, params.b_mean.eps
    y2 = params.b_second.eps
    gamma = cmath.sqrt(span_radicand(params).value)
    if abs(gamma) < _gamma_threshold(params):
        raise DegenerateSpanError("explicit infinitesimal formula needs gamma != 0")
    omega = (al - be) ** 2 * x * y + 2 * al * be * y2
    s = (al + be) * x
    common = (al + be) * ((k + 1) * y - x * omega / gamma**2)
    first = a_k.value / (2 ** (k + 1) * gamma) * (
        (s + gamma) ** k * (common + k * omega / gamma)
        - (s - gamma) ** k * (common - k * omega / gamma)
    )
    second = a_k.eps / (2 ** (k + 1) * gamma) * ((s + gamma) ** (k + 1) - (s - gamma) ** (k + 1))
    return first + second


def centered_span_moment(alpha: complex, beta: complex, b_second, k: int, a_k) -> DualScalar:
    """Span moments when ``phi(b) = phi'(b) = 0``: ``(alpha beta phi(b^2))^(k/2) phi(a^k)`` for even k."""
    b_second, a_k = as_dual(b_second), as_dual(a_k)
    if k % 2:
        return DualScalar()
    h = k // 2
    ab = complex(alpha) * complex(beta)
    y, yp = b_second.value, b_second.eps
    value = ab**h * y**h * a_k.value
    eps = ab**h * (h * yp * y ** (h - 1) * a_k.value + y**h * a_k.eps)
    return DualScalar(value, eps)


def anticommutator_moment(b_mean, b_second, k: int, a_k) -> DualScalar:
    """Moments of ``ab + ba``."""
    b_mean, b_second, a_k = as_dual(b_mean), as_dual(b_second), as_dual(a_k)
    params = SpanParams(1, 1, b_mean, b_second)
    if b_second.value == 0 or is_degenerate(params):
        return span_moment(params, k, a_k)
    x, xp = b_mean.value, b_mean.eps
    y, yp = b_second.value, b_second.eps
    r = cmath.sqrt(y)
    plus, minus = x + r, x - r
    value = (plus ** (k + 1) - minus ** (k + 1)) / (2 * r)
    lead = 2 * (k + 1) * xp * y
    eps = (
        a_k.value
        / (4 * r * y)
        * (plus**k * (lead - yp * (x - k * r)) - minus**k * (lead - yp * (x + k * r)))
        + a_k.eps * value
    )
    return DualScalar(value * a_k.value, eps)


def commutator_moment(b_mean, b_second, k: int, a_k) -> DualScalar:
    """Moments of ``i(ab - ba)``; only even orders survive."""
    b_mean, b_second, a_k = as_dual(b_mean), as_dual(b_second), as_dual(a_k)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k % 2:
        return DualScalar()
    variance = b_second.value - b_mean.value**2
    variance_eps = b_second.eps - 2 * b_mean.value * b_mean.eps
    h = k // 2
    value = variance**h * a_k.value
    eps = h * variance ** (h - 1) * variance_eps * a_k.value + variance**h * a_k.eps
    return DualScalar(value, eps)


# ---------------------------------------------------------------------------
# p = b1 a c1 a b1 + b2 a c2 a b2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoAtomLaw:
    """Law of ``b1 a c1 a b1 + b2 a c2 a b2``, composed multiplicatively with ``mu_{a^2}``.

    ``moment(k) = phi(a^(2k)) * alpha_k`` where ``alpha_k`` is the k-th moment
    of ``weight * delta_{theta+zeta} + lower_weight * delta_{theta-zeta} +
    null_weight * delta_0``.  ``null_weight`` vanishes exactly when the Gram
    matrix of ``(1, b1, b2)`` is singular, in which case ``weight`` equals
    ``unit_mass_weight``.
    """

    theta: complex
    zeta: complex
    weight: complex | None
    lower_weight: complex | None
    base: AMomentData
    trace: complex
    det: complex
    alpha1: complex
    alpha2: complex
    unit_mass_weight: complex | None

    @property
    def null_weight(self) -> complex | None:
        if self.weight is None:
            return None
        return 1 - self.weight - self.lower_weight

    @property
    def atoms(self) -> tuple[complex, complex]:
        return self.theta + self.zeta, self.theta - self.zeta

    @property
    def degenerate(self) -> bool:
        return abs(self.zeta) <= 1e-9 * (abs(self.theta) + 1)

    def weight_sequence(self, k: int, method: str = "auto") -> complex:
        """``alpha_k`` (with ``alpha_0 = 1``)."""
        if k < 0:
            raise ValueError("k must be >= 0")
        if k == 0:
            return 1.0 + 0j
        if method == "auto":
            method = "recurrence" if self.degenerate else "closed"
        if method == "closed":
            if self.degenerate:
                raise ZeroDivisionError("closed two-atom form needs zeta != 0")
            lp, lm = self.atoms
            u = (self.alpha2 - self.alpha1 * lm) / (lp - lm)
            v = (self.alpha1 * lp - self.alpha2) / (lp - lm)
            return u * lp ** (k - 1) + v * lm ** (k - 1)
        if method == "recurrence":
            prev, cur = self.alpha1, self.alpha2
            if k == 1:
                return prev
            for _ in range(k - 2):
                prev, cur = cur, self.trace * cur - self.det * prev
            return cur
        raise ValueError(f"unknown method {method!r}")

    def moment(self, k: int, method: str = "auto") -> complex:
        if k == 0:
            return 1.0 + 0j
        return self.base.power(2 * k).value * self.weight_sequence(k, method)

    def unit_mass_moment(self, k: int) -> complex:
        """Moment of the two-atom law that imposes ``alpha_0 = 1`` on the recurrence.

        Agrees with ``moment`` only when ``null_weight`` is zero.
        """
        if self.unit_mass_weight is None:
            raise ZeroDivisionError("unit-mass weight needs zeta != 0")
        if k == 0:
            return 1.0 + 0j
        lp, lm = self.atoms
        w = self.unit_mass_weight
        return self.base.power(2 * k).value * (w * lp**k + (1 - w) * lm**k)


def two_atom_law(b11, b22, b12, bt1, bt2, ct1, ct2, base: AMomentData) -> TwoAtomLaw:
    """Build the law from ``phi(b_i b_j)``, ``phi(b_i)``, ``phi(c_i)`` and the moments of ``a``."""
    b11, b22, b12, bt1, bt2, ct1, ct2 = map(complex, (b11, b22, b12, bt1, bt2, ct1, ct2))
    theta = 0.5 * (b22 * ct2 + b11 * ct1)
    zeta = 0.5 * cmath.sqrt((b22 * ct2 - b11 * ct1) ** 2 + 4 * b12**2 * ct2 * ct1)
    trace = b22 * ct2 + b11 * ct1
    det = (b22 * b11 - b12**2) * ct2 * ct1
    alpha1 = ct1 * bt1**2 + ct2 * bt2**2
    # bt^T C G C bt with G = [[b11, b12], [b12, b22]], C = diag(ct)
    alpha2 = ct1**2 * bt1**2 * b11 + 2 * ct1 * ct2 * bt1 * bt2 * b12 + ct2**2 * bt2**2 * b22

    weight = lower = unit = None
    if abs(zeta) > 1e-9 * (abs(theta) + 1):
        lp, lm = theta + zeta, theta - zeta
        u = (alpha2 - alpha1 * lm) / (lp - lm)
        v = (alpha1 * lp - alpha2) / (lp - lm)
        scale = abs(lp) + abs(lm)
        if abs(lp) <= 1e-12 * scale:
            lower = v / lm
            weight = 1 - lower
        elif abs(lm) <= 1e-12 * scale:
            weight = u / lp
            lower = 1 - weight
        else:
            weight, lower = u / lp, v / lm
        unit = (zeta - theta + alpha1) / (2 * zeta)
    return TwoAtomLaw(theta, zeta, weight, lower, base, trace, det, alpha1, alpha2, unit)


# ---------------------------------------------------------------------------
# Wigner-model limits under the partial trace
# ---------------------------------------------------------------------------


def d_m(m: int) -> int:
    """Limit variance of ``A^m`` for a semicircular ``A``: ``C_m - C_{m/2}^2`` (m even) or ``C_m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m % 2 == 0:
        return catalan(m) - catalan(m // 2) ** 2
    return catalan(m)


def t_operator_limit_moment(m: int, k: int) -> float:
    """Limit of ``psi_N(T_{A^m}^k)``: ``D_m^(k/2)`` for even k, 0 for odd k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return float(d_m(m)) ** (k // 2) if k % 2 == 0 else 0.0


def wigner_ls_limit_moment(alpha: complex, m: int, k: int) -> float:
    """Limit of ``psi_N(P^k)`` for ``P = alpha T_{A^m} B + conj(alpha) B T_{A^m}``.

    Equals ``(|alpha|^2 D_m)^(k/2)`` for even ``k`` and 0 for odd ``k``.
    """
    alpha = complex(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if k % 2:
        return 0.0
    return (abs(alpha) ** 2 * d_m(m)) ** (k // 2)


def wigner_ls_limit_moment_abs(alpha: complex, m: int, k: int) -> float:
    """The alternative reading ``(|alpha| D_m)^(k/2)``, kept for reporting only."""
    alpha = complex(alpha)
    if k % 2:
        return 0.0
    return (abs(alpha) * d_m(m)) ** (k // 2)


def t_operator_base(horizon: int, m: int = 1) -> AMomentData:
    """Limit law of ``T_{A^m}`` under the partial trace: symmetric two-point with variance ``D_m``."""
    return AMomentData.symmetric_bernoulli(horizon, variance=float(d_m(m)))


def wigner_general_poly_limit(n: int, m: int, h: int, s: int, base: AMomentData | None = None) -> TwoAtomLaw:
    """Limit law of ``B^2n T B^2h T B^2n + B^2m T B^2s T B^2m`` with ``T = T_A``.

    ``base`` defaults to the limit law of ``T_A`` (all even moments equal 1).
    """
    if min(n, m, h, s) < 1:
        raise ValueError("n, m, h, s must all be >= 1")
    if base is None:
        base = t_operator_base(64)
    return two_atom_law(
        catalan(2 * n),
        catalan(2 * m),
        catalan(n + m),
        catalan(n),
        catalan(m),
        catalan(h),
        catalan(s),
        base,
    )


def catalan_inequality_holds(n: int, m: int) -> bool:
    """``2 C_n^2 C_m^2 <= C_{n+m}^2 <= C_{2n} C_{2m}``."""
    cn, cm, cnm = catalan(n), catalan(m), catalan(n + m)
    return 2 * cn**2 * cm**2 <= cnm**2 <= catalan(2 * n) * catalan(2 * m)
