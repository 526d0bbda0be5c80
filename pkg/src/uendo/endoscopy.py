"""Elliptic endoscopic data for U(N) and the twisted GL(N), with the
stabilization coefficients and the (parameter, semisimple element)
correspondence.

Standard elliptic data of U(N) are the pairs U(N1) x U(N2), N1 + N2 = N,
with coefficient 1, 1/2 or 1/4 according to whether one part vanishes, the
parts are distinct and nonzero, or equal and nonzero; the outer group is
Z/2 exactly when N1 = N2 != 0.  Twisted elliptic data of GL(N) carry a sign
pair (kappa1, kappa2): opposite signs when N1 = N2 mod 2, equal signs
otherwise, with the two opposite-sign choices identified when N1 = N2; the
coefficient is 1/2 for the two simple data and 1/4 otherwise, and all
twisted outer groups are trivial.

`correspond` realizes the bijection sending a semisimple element s of the
centralizer (given through its +-1 eigenvalue multiplicities per factor)
to the pair (U(N+) x U(N-), psi+ x psi-) cut out by the eigenspaces of s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .centralizer import centralizer_shape, component_group
from .params import GlobalParameter, SimpleDatumTag


@dataclass(frozen=True)
class StandardDatum:
    split: Tuple[int, int]
    out_order: int
    iota: Fraction

    def __post_init__(self):
        n1, n2 = self.split
        if n1 < n2 or n2 < 0 or n1 + n2 < 1:
            raise ValueError("split must satisfy N1 >= N2 >= 0, N >= 1")


@dataclass(frozen=True)
class TwistedDatum:
    split: Tuple[int, int]
    signature: Tuple[int, int]
    is_simple: bool
    iota_twisted: Fraction
    parity: Optional[int] = None  # only for simple data


def _standard_iota(n1: int, n2: int) -> Fraction:
    if n1 == 0 or n2 == 0:
        return Fraction(1)
    if n1 == n2:
        return Fraction(1, 4)
    return Fraction(1, 2)


def enumerate_standard(N: int) -> List[StandardDatum]:
    """Equivalence classes of elliptic endoscopic data of U(N)."""
    if N < 1:
        raise ValueError("N must be positive")
    out = []
    for n2 in range(0, N // 2 + 1):
        n1 = N - n2
        out.append(
            StandardDatum(
                split=(n1, n2),
                out_order=2 if (n1 == n2 and n2 != 0) else 1,
                iota=_standard_iota(n1, n2),
            )
        )
    return out


def enumerate_twisted(N: int) -> List[TwistedDatum]:
    """Equivalence classes of twisted elliptic data of GL(N); exactly two
    simple classes, with the (1,-1)/(-1,1) identification when N1 = N2."""
    if N < 1:
        raise ValueError("N must be positive")
    out = []
    for n2 in range(0, N // 2 + 1):
        n1 = N - n2
        if (n1 - n2) % 2 == 0:
            signatures = [(1, -1), (-1, 1)]
        else:
            signatures = [(1, 1), (-1, -1)]
        if n1 == n2:
            signatures = [(1, -1)]
        for sig in signatures:
            simple = n2 == 0
            out.append(
                TwistedDatum(
                    split=(n1, n2),
                    signature=sig,
                    is_simple=simple,
                    iota_twisted=Fraction(1, 2) if simple else Fraction(1, 4),
                    parity=(-1) ** (n1 - 1) * sig[0] if simple else None,
                )
            )
    return out


# ---------------------------------------------------------------------------
# (psi, s) <-> (G', psi')


@dataclass(frozen=True)
class Correspondence:
    """Output of `correspond`: the datum, the two parameter halves, and the
    size of the outer-orbit of the ordered pair (2 when the two halves play
    symmetric roles on a datum with nontrivial outer group)."""

    datum: StandardDatum
    psi_plus: Optional[GlobalParameter]
    psi_minus: Optional[GlobalParameter]
    orbit: int


def _half(shape_entries, plus_mults) -> Optional[GlobalParameter]:
    parts = [(sp, m) for (sp, _), m in zip(shape_entries, plus_mults) if m > 0]
    if not parts:
        return None
    return GlobalParameter(parts)


def correspond(
    psi: GlobalParameter,
    tag: SimpleDatumTag,
    s: Dict[str, Tuple[int, int]],
) -> Correspondence:
    """The endoscopic pair attached to s in the centralizer of psi.

    `s` maps each constituent label (orthogonal and symplectic factors: one
    per self-dual constituent; general linear factors: one per partnered
    orbit representative) to the multiplicities (p, m) of its +1 and -1
    eigenvalues.  Symplectic factors need both p and m even; a partnered
    orbit contributes both members with the same split.
    """
    shape = centralizer_shape(psi, tag)
    plus_parts: List[Tuple] = []
    minus_parts: List[Tuple] = []

    def eat(sp, l, kind):
        p, m = s.get(sp.label, (l, 0))
        if p < 0 or m < 0 or p + m != l:
            raise ValueError("eigenvalue multiplicities for %r must sum to %d" % (sp.label, l))
        if kind == "Sp" and (p % 2 or m % 2):
            raise ValueError("odd eigenvalue count in a symplectic factor %r" % sp.label)
        if p:
            plus_parts.append((sp, p))
        if m:
            minus_parts.append((sp, m))

    for sp, l in shape.orthogonal:
        eat(sp, l, "O")
    for sp, l in shape.symplectic:
        eat(sp, l, "Sp")
    for sp, l in shape.general_linear:
        # the partner block carries the transpose-inverse of s, hence the
        # same +-1 eigenvalue multiplicities
        p, m = s.get(sp.label, (l, 0))
        if p < 0 or m < 0 or p + m != l:
            raise ValueError("eigenvalue multiplicities for %r must sum to %d" % (sp.label, l))
        partner = psi.constituent(sp.partner)[0]
        if p:
            plus_parts.append((sp, p))
            plus_parts.append((partner, p))
        if m:
            minus_parts.append((sp, m))
            minus_parts.append((partner, m))

    psi_plus = GlobalParameter(plus_parts) if plus_parts else None
    psi_minus = GlobalParameter(minus_parts) if minus_parts else None
    n_plus = psi_plus.total_degree if psi_plus else 0
    n_minus = psi_minus.total_degree if psi_minus else 0
    split = (max(n_plus, n_minus), min(n_plus, n_minus))
    datum = StandardDatum(
        split=split,
        out_order=2 if (split[0] == split[1] and split[1] != 0) else 1,
        iota=_standard_iota(*split),
    )
    orbit = 2 if (n_plus == n_minus and psi_plus != psi_minus) else 1
    return Correspondence(datum, psi_plus, psi_minus, orbit)


def component_order(psi: Optional[GlobalParameter], tag_parity: int) -> int:
    """|S_psi| of a parameter half relative to a datum of the given parity,
    with the empty half contributing 1."""
    if psi is None:
        return 1
    plus = [(sp, l) for sp, l in psi.self_dual]
    # all constituents of a half inherit the ambient datum parity data; the
    # component group order only needs the orthogonal-factor multiplicities
    from .params import constituent_sign

    orth = [l for sp, l in plus if constituent_sign(sp) == tag_parity]
    if not orth:
        return 1
    if all(l % 2 == 0 for l in orth):
        return 2 ** len(orth)
    return 2 ** (len(orth) - 1)


def collapse_check(psi: GlobalParameter, tag: SimpleDatumTag):
    """Verify iota(G, G'_x) * orbit_x / |S_(psi'_x)| = 1 / |S_psi| for every
    x in the component group of a square-integrable parameter.

    orbit_x is the size of the outer-automorphism orbit of the ordered pair
    psi' (2 exactly when the two halves have equal degree but differ); it
    accounts for the two orderings of psi' occurring separately in the
    endoscopic expansion.  Returns the list of per-x records.
    """
    shape = centralizer_shape(psi, tag)
    if shape.symplectic or shape.general_linear or any(l != 1 for _, l in shape.orthogonal):
        raise ValueError("collapse check requires a square-integrable parameter")
    group = component_group(shape)
    s_order = group.order
    records = []
    for vec in group.elements():
        s = {
            sp.label: ((l, 0) if sign == 1 else (0, l))
            for (sp, l), sign in zip(shape.orthogonal, vec)
        }
        corr = correspond(psi, tag, s)
        split_orders = component_order(corr.psi_plus, tag.parity) * component_order(
            corr.psi_minus, tag.parity
        )
        lhs = corr.datum.iota * corr.orbit * Fraction(1, split_orders)
        records.append((vec, corr, lhs == Fraction(1, s_order)))
    return records
