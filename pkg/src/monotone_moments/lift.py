"""Span moments as traces of lifted 2x2 matrices.

``alpha*ab + beta*ba`` is the (1,1) entry of ``B0 A B1`` with
``B0 = [[alpha, b], [0, 0]]``, ``A = diag(a, a)``, ``B1 = [[b, 0], [beta, 0]]``.
Under ``Tr_2 (x) phi`` each B-matrix between A-factors may be replaced by its
entrywise moments, so ``phi(p^k) = phi(a^k) Tr(B0' R^(k-1) B1')`` with the
scalar transfer matrix ``R = [[alpha phi(b), phi(b^2)], [alpha beta, beta phi(b)]]``.
Entries are ``DualScalar`` so the same product yields ``phi'``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closed_form import SpanParams
from .core import DualScalar, as_dual

__all__ = ["LiftedTriple", "lift_product", "lift_span_moment", "lifted_triple"]

Mat2 = tuple[tuple[DualScalar, DualScalar], tuple[DualScalar, DualScalar]]

_ZERO = DualScalar()
_IDENTITY: Mat2 = ((DualScalar(1.0), _ZERO), (_ZERO, DualScalar(1.0)))


def _matmul(x: Mat2, y: Mat2) -> Mat2:
    return tuple(
        tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)) for i in range(2)
    )


@dataclass(frozen=True)
class LiftedTriple:
    b0_scalar: Mat2
    transfer: Mat2
    b1_scalar: Mat2


def lifted_triple(params: SpanParams) -> LiftedTriple:
    al, be = DualScalar(params.alpha), DualScalar(params.beta)
    x, x2 = params.b_mean, params.b_second
    return LiftedTriple(
        b0_scalar=((al, x), (_ZERO, _ZERO)),
        transfer=((al * x, x2), (al * be, be * x)),
        b1_scalar=((x, _ZERO), (be, _ZERO)),
    )


def _power_sequential(m: Mat2, n: int) -> Mat2:
    out = _IDENTITY
    for _ in range(n):
        out = _matmul(m, out)
    return out


def _power_squaring(m: Mat2, n: int) -> Mat2:
    out, base = _IDENTITY, m
    while n:
        if n & 1:
            out = _matmul(out, base)
        base = _matmul(base, base)
        n >>= 1
    return out


def lift_product(triple: LiftedTriple, k: int, method: str = "sequential") -> Mat2:
    """``B0' R^(k-1) B1'``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    power = {"sequential": _power_sequential, "squaring": _power_squaring}[method]
    return _matmul(_matmul(triple.b0_scalar, power(triple.transfer, k - 1)), triple.b1_scalar)


def lift_span_moment(params: SpanParams, k: int, a_k, method: str = "sequential") -> DualScalar:
    a_k = as_dual(a_k)
    prod = lift_product(lifted_triple(params), k, method)
    lower = prod[1][1]
    if lower.value != 0 or lower.eps != 0:
        raise RuntimeError("lifted product has a nonzero (2,2) entry")
    return a_k * (prod[0][0] + lower)
