"""Scalars, non-commutative words and polynomials, and small combinatorial helpers.

Everything here is an immutable value.  ``DualScalar`` models the commutative
algebra of upper-triangular 2x2 matrices ``[[x, x'], [0, x]]`` and carries a
pair ``(phi(w), phi'(w))`` through every moment computation.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "AMomentData",
    "BFamilyMoments",
    "DualScalar",
    "Family",
    "HorizonError",
    "NCLetter",
    "NCPolynomial",
    "NCWord",
    "as_dual",
    "catalan",
    "dual",
    "parse_word",
    "poly_mul",
    "poly_pow",
    "rel_err",
]

INT64_MAX = 2**63 - 1


class HorizonError(ValueError):
    """A moment was requested beyond the declared horizon of an oracle."""


# ---------------------------------------------------------------------------
# Dual scalars
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DualScalar:
    """Element ``value + eps * E`` of the upper-triangular algebra, ``E**2 = 0``."""

    value: complex = 0j
    eps: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "eps", complex(self.eps))

    @staticmethod
    def coerce(x) -> "DualScalar":
        if isinstance(x, DualScalar):
            return x
        if isinstance(x, (int, float, complex, np.number)):
            return DualScalar(complex(x), 0j)
        return NotImplemented

    def __add__(self, other):
        other = DualScalar.coerce(other)
        if other is NotImplemented:
            return other
        return DualScalar(self.value + other.value, self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.eps)

    def __sub__(self, other):
        other = DualScalar.coerce(other)
        if other is NotImplemented:
            return other
        return DualScalar(self.value - other.value, self.eps - other.eps)

    def __rsub__(self, other):
        other = DualScalar.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = DualScalar.coerce(other)
        if other is NotImplemented:
            return other
        return DualScalar(
            self.value * other.value,
            self.value * other.eps + self.eps * other.value,
        )

    __rmul__ = __mul__

    def inverse(self) -> "DualScalar":
        if self.value == 0:
            raise ZeroDivisionError("dual scalar with zero value part is not invertible")
        inv = 1.0 / self.value
        return DualScalar(inv, -self.eps * inv * inv)

    def __truediv__(self, other):
        other = DualScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = DualScalar.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> "DualScalar":
        if not isinstance(n, (int, np.integer)):
            raise TypeError("only integer powers of dual scalars are supported")
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return DualScalar(1.0, 0.0)
        # (x + x'E)^n = x^n + n x^(n-1) x' E
        return DualScalar(self.value**n, n * self.value ** (n - 1) * self.eps)

    def sqrt(self) -> "DualScalar":
        """Principal-branch square root; the value part must be nonzero."""
        root = cmath.sqrt(self.value)
        if root == 0:
            if self.eps == 0:
                return DualScalar(0.0, 0.0)
            raise ZeroDivisionError("square root of a dual scalar with zero value part")
        return DualScalar(root, self.eps / (2.0 * root))

    def conjugate(self) -> "DualScalar":
        return DualScalar(self.value.conjugate(), self.eps.conjugate())

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.value, self.eps], [0.0, self.value]], dtype=complex)

    def __iter__(self):
        yield self.value
        yield self.eps

    def __repr__(self) -> str:
        return f"DualScalar({self.value!r}, {self.eps!r})"


def dual(value=0j, eps=0j) -> DualScalar:
    return DualScalar(value, eps)


def as_dual(x) -> DualScalar:
    """Accept a ``DualScalar``, a ``(value, eps)`` pair or a plain number."""
    if isinstance(x, DualScalar):
        return x
    if isinstance(x, (tuple, list)):
        return DualScalar(*x)
    return DualScalar(x)


ONE = DualScalar(1.0, 0.0)
ZERO = DualScalar(0.0, 0.0)


def rel_err(x: complex, ref: complex) -> float:
    """``|x - ref| / max(1, |ref|)``."""
    return abs(x - ref) / max(1.0, abs(ref))


# ---------------------------------------------------------------------------
# Words and polynomials
# ---------------------------------------------------------------------------


class Family(enum.Enum):
    A = "a"
    B = "b"


@dataclass(frozen=True, slots=True, order=True)
class NCLetter:
    family: Family
    id: int = 0

    def __post_init__(self):
        if self.id < 0:
            raise ValueError("letter id must be nonnegative")

    @property
    def is_a(self) -> bool:
        return self.family is Family.A

    def __str__(self) -> str:
        return self.family.value if self.id == 0 else f"{self.family.value}{self.id}"


@dataclass(frozen=True, slots=True)
class NCWord:
    """A finite product of letters; the empty word is the unit."""

    letters: tuple[NCLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[NCLetter]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __mul__(self, other: "NCWord") -> "NCWord":
        if not isinstance(other, NCWord):
            return NotImplemented
        return NCWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "NCWord":
        return NCWord(self.letters * n)

    @property
    def is_a_only(self) -> bool:
        return all(x.is_a for x in self.letters)

    @property
    def is_b_only(self) -> bool:
        return not any(x.is_a for x in self.letters)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) if self.letters else "1"


def parse_word(text: str) -> NCWord:
    """Parse ``"a b1 a b2"`` (or ``"abab"`` for single-index letters) into a word.

    Tokens start with ``a`` (A-family) or ``b`` (B-family) and may carry an
    integer id, e.g. ``b2``.  ``"1"`` or ``""`` is the empty word.
    """
    text = text.strip()
    if text in ("", "1"):
        return NCWord()
    tokens = text.split() if " " in text else _split_compact(text)
    letters = []
    for tok in tokens:
        head, tail = tok[0], tok[1:]
        if head not in "ab" or (tail and not tail.isdigit()):
            raise ValueError(f"bad letter {tok!r} in word {text!r}")
        letters.append(NCLetter(Family(head), int(tail) if tail else 0))
    return NCWord(tuple(letters))


def _split_compact(text: str) -> list[str]:
    out: list[str] = []
    for ch in text:
        if ch.isdigit():
            if not out:
                raise ValueError(f"word {text!r} starts with a digit")
            out[-1] += ch
        else:
            out.append(ch)
    return out


class NCPolynomial(Mapping[NCWord, complex]):
    """Finite complex combination of words; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[NCWord, complex] | Iterable[tuple[NCWord, complex]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[NCWord, complex] = {}
        for w, c in items:
            if isinstance(w, str):
                w = parse_word(w)
            merged[w] = merged.get(w, 0j) + complex(c)
        self._terms = {w: c for w, c in merged.items() if c != 0}

    @classmethod
    def unit(cls) -> "NCPolynomial":
        return cls({NCWord(): 1.0})

    @classmethod
    def from_word(cls, w: NCWord | str, coeff: complex = 1.0) -> "NCPolynomial":
        return cls({w: coeff})

    @property
    def terms(self) -> dict[NCWord, complex]:
        return dict(self._terms)

    def __getitem__(self, w: NCWord) -> complex:
        return self._terms[w]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return NCPolynomial(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-1.0) * other

    def __rmul__(self, c) -> "NCPolynomial":
        if isinstance(c, (int, float, complex, np.number)):
            return NCPolynomial({w: c * v for w, v in self._terms.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return poly_mul(self, other)
        return self.__rmul__(other)

    def __pow__(self, m: int) -> "NCPolynomial":
        return poly_pow(self, m)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def __repr__(self) -> str:
        body = " + ".join(f"({c:g})*[{w}]" for w, c in self._terms.items()) or "0"
        return f"NCPolynomial({body})"


def poly_mul(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    out: dict[NCWord, complex] = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 * w2
            out[w] = out.get(w, 0j) + c1 * c2
    return NCPolynomial(out)


def poly_pow(p: NCPolynomial, m: int) -> NCPolynomial:
    """Fully distributed ``p**m`` with merged coefficients."""
    if m < 0:
        raise ValueError("power must be nonnegative")
    result = NCPolynomial.unit()
    for _ in range(m):
        result = poly_mul(result, p)
    return result


# ---------------------------------------------------------------------------
# Moment oracles
# ---------------------------------------------------------------------------


def _to_dual_list(values: Sequence | None, n: int) -> list[DualScalar]:
    if values is None:
        return [ZERO] * n
    return [DualScalar(complex(v)) for v in values]


class _MomentOracle:
    family: Family

    def __init__(self, evaluator: Callable[[NCWord], DualScalar], horizon: int):
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        self._evaluator = evaluator
        self.horizon = int(horizon)

    def __call__(self, w: NCWord) -> DualScalar:
        if len(w) == 0:
            return ONE
        if any(x.family is not self.family for x in w):
            raise ValueError(f"word [{w}] contains letters outside family {self.family.name}")
        if len(w) > self.horizon:
            raise HorizonError(
                f"{self.family.name}-word of degree {len(w)} exceeds horizon {self.horizon}"
            )
        return DualScalar.coerce(self._evaluator(w))

    def power(self, k: int, letter_id: int = 0) -> DualScalar:
        """Moment of ``x**k`` for the generator with the given id."""
        return self(NCWord((NCLetter(self.family, letter_id),) * k))

    def zero_eps(self):
        """Same oracle with every infinitesimal component dropped."""
        ev = self._evaluator
        return type(self)(lambda w: DualScalar(DualScalar.coerce(ev(w)).value), self.horizon)

    @classmethod
    def from_sequence(cls, phi: Sequence, phi_prime: Sequence | None = None, letter_id: int = 0):
        """Single generator with ``phi[k-1] = phi(x**k)`` and likewise for ``phi_prime``."""
        phi = [complex(v) for v in phi]
        phi_prime = [0j] * len(phi) if phi_prime is None else [complex(v) for v in phi_prime]
        if len(phi_prime) != len(phi):
            raise ValueError("phi and phi_prime must have the same length")

        def evaluator(w: NCWord) -> DualScalar:
            if any(x.id != letter_id for x in w):
                raise ValueError(f"word [{w}] uses a letter other than id {letter_id}")
            k = len(w)
            return DualScalar(phi[k - 1], phi_prime[k - 1])

        return cls(evaluator, len(phi))

    @classmethod
    def semicircle(cls, horizon: int, letter_id: int = 0):
        """Standard semicircle: even moments are Catalan numbers, odd vanish."""
        phi = [catalan(k // 2) if k % 2 == 0 else 0 for k in range(1, horizon + 1)]
        return cls.from_sequence(phi, letter_id=letter_id)

    @classmethod
    def symmetric_bernoulli(cls, horizon: int, variance: float = 1.0, letter_id: int = 0):
        """Law ``(delta_s + delta_-s) / 2`` with ``s**2 = variance``."""
        phi = [variance ** (k // 2) if k % 2 == 0 else 0 for k in range(1, horizon + 1)]
        return cls.from_sequence(phi, letter_id=letter_id)


class AMomentData(_MomentOracle):
    """Moments ``(phi, phi')`` of words in the A-family."""

    family = Family.A


class BFamilyMoments(_MomentOracle):
    """Joint moments ``(phi, phi')`` of words in the B-family."""

    family = Family.B

    @classmethod
    def from_table(cls, table: Mapping, horizon: int | None = None):
        """Explicit table keyed by words (or word strings) with dual or complex values.

        Missing words raise ``KeyError``; use this for finitely specified joint
        moments such as ``phi(b_i b_j)``.
        """
        parsed = {}
        for w, v in table.items():
            w = parse_word(w) if isinstance(w, str) else w
            parsed[w] = as_dual(v)
        if horizon is None:
            horizon = max((len(w) for w in parsed), default=0)

        def evaluator(w: NCWord) -> DualScalar:
            try:
                return parsed[w]
            except KeyError:
                raise KeyError(f"no moment given for B-word [{w}]") from None

        return cls(evaluator, horizon)


# ---------------------------------------------------------------------------
# Catalan numbers
# ---------------------------------------------------------------------------


def catalan(n: int) -> int:
    """``n``-th Catalan number; errors once the value leaves signed 64-bit range."""
    if n < 0:
        raise ValueError("catalan index must be nonnegative")
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    if c > INT64_MAX:
        raise OverflowError(f"C_{n} does not fit in 64 bits")
    return c
