"""Formal standard-character expansions of Speh-type characters.

theta_r(k, lam) denotes the standard character attached to the twist by
|.|^lam of the essentially square-integrable datum (r, k); in the
archimedean case r is the trivial label and theta(k, lam) the character
z -> (z/|z|)^k |z|^lam.  The Speh-type character expands as

    theta_r^n(k) = sum over w in S_n of sgn(w) *
                   box-sum over i of theta_r(k - (i - w(i)), (n+1) - (i + w(i))),

with the boundary conventions, in the non-archimedean case, that a factor
with first entry -1 is the trivial character on the trivial group (dropped
from the box-sum) and a factor with first entry below -1 annihilates its
term.  The distinguished Weyl element w* (the longest one in the
archimedean case or when n <= k+1, a piecewise variant otherwise) produces
the unique tempered term

    theta_r^(n,*)(k) = box-sum over i <= n* of theta_r(k + n + 1 - 2i, 0),

with n* = min(n, k+1) non-archimedean and n* = n archimedean; the factor
theta_r(k + n - 1, 0) occurs in it exactly once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

ARCH = "archimedean"
NONARCH = "nonarchimedean"


@dataclass(frozen=True)
class StandardSymbol:
    """One box-sum factor theta_r(k, lam)."""

    base: str
    k: int
    lam: Fraction
    field_case: str

    def __post_init__(self):
        if self.field_case not in (ARCH, NONARCH):
            raise ValueError("field case must be archimedean or nonarchimedean")


def _normalize_symbol(base: str, k: int, lam, field_case: str):
    """None for the empty symbol, 0 for the zero symbol, else the symbol."""
    lam = Fraction(lam)
    if field_case == NONARCH:
        if k == -1:
            return None
        if k < -1:
            return 0
    return StandardSymbol(base, k, lam, field_case)


@dataclass(frozen=True)
class IsobaricTerm:
    """A box-sum of standard symbols, in canonical sorted order."""

    symbols: Tuple[StandardSymbol, ...]

    @classmethod
    def build(cls, symbols) -> Optional["IsobaricTerm"]:
        """Normalize factors; None when some factor is the zero symbol."""
        kept = []
        for s in symbols:
            if s == 0:
                return None
            if s is None:
                continue
            kept.append(s)
        kept.sort(key=lambda s: (s.base, -s.k, s.lam))
        return cls(tuple(kept))

    @property
    def is_tempered(self) -> bool:
        return all(s.lam == 0 for s in self.symbols)


class FormalCharacterCombination:
    """Integer combination of isobaric terms, zero coefficients pruned."""

    def __init__(self, coeffs: Dict[IsobaricTerm, int] | None = None):
        self.coeffs: Dict[IsobaricTerm, int] = {}
        for term, c in (coeffs or {}).items():
            if c:
                self.coeffs[term] = c

    def add(self, term: Optional[IsobaricTerm], c: int) -> None:
        if term is None or c == 0:
            return
        new = self.coeffs.get(term, 0) + c
        if new:
            self.coeffs[term] = new
        else:
            self.coeffs.pop(term, None)

    def items(self):
        return sorted(
            self.coeffs.items(),
            key=lambda kv: tuple((s.base, -s.k, s.lam) for s in kv[0].symbols),
        )

    def __eq__(self, other):
        return isinstance(other, FormalCharacterCombination) and self.coeffs == other.coeffs

    def __len__(self):
        return len(self.coeffs)


def _perm_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def term_for_permutation(base: str, n: int, k: int, field_case: str, perm) -> Optional[IsobaricTerm]:
    """The box-sum attached to one Weyl element (perm maps i -> w(i),
    zero-indexed internally)."""
    symbols = []
    for i0, wi0 in enumerate(perm):
        i, wi = i0 + 1, wi0 + 1
        symbols.append(
            _normalize_symbol(base, k - (i - wi), Fraction((n + 1) - (i + wi)), field_case)
        )
    return IsobaricTerm.build(symbols)


def expand(base: str, n: int, k: int, field_case: str) -> FormalCharacterCombination:
    """Signed sum over the symmetric group, after boundary conventions and
    cancellation."""
    if n < 1:
        raise ValueError("n must be positive")
    if field_case == NONARCH and k < 0:
        raise ValueError("nonarchimedean expansions need k >= 0")
    if field_case not in (ARCH, NONARCH):
        raise ValueError("unknown field case %r" % field_case)
    out = FormalCharacterCombination()
    for perm in itertools.permutations(range(n)):
        term = term_for_permutation(base, n, k, field_case, perm)
        out.add(term, _perm_sign(perm))
    return out


def w_star(n: int, k: int, field_case: str) -> Tuple[int, ...]:
    """The distinguished Weyl element, zero-indexed."""
    if field_case == ARCH or n <= k + 1:
        return tuple(n - 1 - i for i in range(n))
    out = []
    for i in range(1, n + 1):
        if i <= k + 1:
            out.append(n + 1 - i)
        else:
            out.append(i - (k + 1))
    return tuple(v - 1 for v in out)


def theta_star(base: str, n: int, k: int, field_case: str) -> IsobaricTerm:
    """Box-sum over i <= n* of theta_r(k + n + 1 - 2i, 0)."""
    n_star = n if field_case == ARCH else min(n, k + 1)
    symbols = [
        _normalize_symbol(base, k + n + 1 - 2 * i, 0, field_case)
        for i in range(1, n_star + 1)
    ]
    term = IsobaricTerm.build(symbols)
    assert term is not None
    return term


def tempered_part(c: FormalCharacterCombination) -> Tuple[IsobaricTerm, int]:
    """The unique all-lambda-zero term with its coefficient."""
    found = [(t, coeff) for t, coeff in c.items() if t.is_tempered]
    if len(found) != 1:
        raise AssertionError("tempered part is not a single term")
    return found[0]


def sq_int_multiplicity(term: IsobaricTerm, base: str, n: int, k: int) -> int:
    """Occurrences of the factor theta_r(k + n - 1, 0) in the term."""
    return sum(
        1 for s in term.symbols if s.base == base and s.k == k + n - 1 and s.lam == 0
    )


def mod2_reduce(c: FormalCharacterCombination) -> Dict[IsobaricTerm, int]:
    """Coefficients modulo 2, zero classes absent."""
    out = {}
    for term, coeff in c.items():
        if coeff % 2:
            out[term] = coeff % 2
    return out
