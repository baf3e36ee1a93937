"""Brute-force moments under monotone independence of the A-family from the B-family.

A word ``b0 a1 b1 ... an bn`` factors as ``phi(a1...an) * phi(b0) * ... * phi(bn)``
where the ``b_i`` are the maximal runs of B-letters.  Running the product in
``DualScalar`` arithmetic gives the infinitesimal moment ``phi'`` for free.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    AMomentData,
    BFamilyMoments,
    DualScalar,
    NCPolynomial,
    NCWord,
    poly_mul,
)

__all__ = [
    "DEFAULT_MAX_TERMS",
    "FactorizationSplit",
    "MalformedTermError",
    "TermExplosionError",
    "eval_poly_moment",
    "eval_word",
    "inf_structured_moment",
    "split_word",
    "structured_moment",
    "structured_polynomial",
]

DEFAULT_MAX_TERMS = 10**7


class TermExplosionError(RuntimeError):
    """The expanded power would exceed the configured term cap."""


class MalformedTermError(ValueError):
    pass


@dataclass(frozen=True)
class FactorizationSplit:
    a_word: NCWord
    b_blocks: tuple[NCWord, ...]


def split_word(w: NCWord) -> FactorizationSplit:
    a_letters = []
    blocks: list[NCWord] = []
    run: list = []
    for letter in w:
        if letter.is_a:
            a_letters.append(letter)
            if run:
                blocks.append(NCWord(tuple(run)))
                run = []
        else:
            run.append(letter)
    if run:
        blocks.append(NCWord(tuple(run)))
    return FactorizationSplit(NCWord(tuple(a_letters)), tuple(blocks))


def eval_word(w: NCWord, a: AMomentData, b: BFamilyMoments) -> DualScalar:
    split = split_word(w)
    out = a(split.a_word)
    for block in split.b_blocks:
        out = out * b(block)
    return out


def eval_poly_moment(
    p: NCPolynomial,
    k: int,
    a: AMomentData,
    b: BFamilyMoments,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> DualScalar:
    """``(phi(p**k), phi'(p**k))`` by full expansion and word-by-word factorization."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    if len(p) ** k > max_terms:
        raise TermExplosionError(
            f"expanding a {len(p)}-term polynomial to power {k} may produce "
            f"{len(p) ** k} terms (cap {max_terms})"
        )
    expanded = NCPolynomial.unit()
    for _ in range(k):
        expanded = poly_mul(expanded, p)
    total = DualScalar()
    for w, c in expanded.items():
        total = total + c * eval_word(w, a, b)
    return total


# ---------------------------------------------------------------------------
# Structured form  p = sum_j  b_j y_j b'_j
# ---------------------------------------------------------------------------

StructuredTerm = tuple[NCWord, NCWord, NCWord]


def _check_terms(terms: Sequence[StructuredTerm]) -> None:
    if not terms:
        raise MalformedTermError("need at least one term")
    for bl, y, br in terms:
        if not (bl.is_b_only and br.is_b_only):
            raise MalformedTermError(f"boundary words must be B-words, got [{bl}] / [{br}]")
        if len(y) == 0 or not y[0].is_a or not y[-1].is_a:
            raise MalformedTermError(f"middle word [{y}] must start and end with an A-letter")


def _contract(y: NCWord, b: BFamilyMoments) -> tuple[NCWord, list[DualScalar]]:
    """A-letters of ``y`` plus the moments of its interior B-runs."""
    split = split_word(y)
    return split.a_word, [b(block) for block in split.b_blocks]


def _factor_lists(terms, m, a, b):
    """For each index tuple, yield the list of scalar factors of its summand.

    Factors are: the A-moment of the concatenated contractions, the interior
    B-moments of each chosen ``y``, then the boundary chain
    ``phi(b_j1), phi(b'_j1 b_j2), ..., phi(b'_jm)``.
    """
    contracted = [_contract(y, b) for _, y, _ in terms]
    for idx in itertools.product(range(len(terms)), repeat=m):
        a_word = NCWord()
        factors: list[DualScalar] = []
        for j in idx:
            a_word = a_word * contracted[j][0]
            factors.extend(contracted[j][1])
        chain = [b(terms[idx[0]][0])]
        for j_prev, j_next in zip(idx, idx[1:]):
            chain.append(b(terms[j_prev][2] * terms[j_next][0]))
        chain.append(b(terms[idx[-1]][2]))
        yield [a(a_word)] + factors + chain


def structured_moment(
    terms: Sequence[StructuredTerm],
    m: int,
    a: AMomentData,
    b: BFamilyMoments,
) -> complex:
    """``phi(p**m)`` for ``p = sum_j b_j y_j b'_j`` via the index-tuple sum."""
    _check_terms(terms)
    if m < 1:
        raise ValueError("m must be >= 1")
    total = 0j
    for factors in _factor_lists(terms, m, a, b):
        total += math.prod((f.value for f in factors), start=1 + 0j)
    return total


def inf_structured_moment(
    terms: Sequence[StructuredTerm],
    m: int,
    a: AMomentData,
    b: BFamilyMoments,
) -> complex:
    """``phi'(p**m)``: one ``phi'`` placed on each factor in turn, ``phi`` on the rest."""
    _check_terms(terms)
    if m < 1:
        raise ValueError("m must be >= 1")
    total = 0j
    for factors in _factor_lists(terms, m, a, b):
        values = [f.value for f in factors]
        for slot, f in enumerate(factors):
            if f.eps == 0:
                continue
            rest = math.prod(values[:slot] + values[slot + 1 :], start=1 + 0j)
            total += f.eps * rest
    return total


def structured_polynomial(terms: Sequence[StructuredTerm]) -> NCPolynomial:
    """Expand ``sum_j b_j y_j b'_j`` into an ``NCPolynomial``."""
    _check_terms(terms)
    return NCPolynomial([(bl * y * br, 1.0) for bl, y, br in terms])
