"""Formal global parameters and their classification chains.

A formal parameter is an unordered sum of simple constituents mu (x) nu(n),
where mu is an opaque cuspidal label carrying (degree, duality) metadata and
nu(n) denotes the n-dimensional irreducible representation of SL(2, C).
Constituents that are not conjugate self-dual come in partnered pairs with
equal multiplicity.  Classification predicates (square-integrable, elliptic,
...) are evaluated through the shape of the centralizer the parameter would
have inside GL(N, C), both for the twisted general linear group and relative
to a unitary datum (N, kappa).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

ORTHOGONAL = "conjugate-orthogonal"
SYMPLECTIC = "conjugate-symplectic"
NOT_SELF_DUAL = "not-self-dual"

_DUALITIES = (ORTHOGONAL, SYMPLECTIC, NOT_SELF_DUAL)


@dataclass(frozen=True)
class SimpleParameter:
    """One simple constituent mu (x) nu(n) of a formal parameter.

    `duality` is the duality class of the cuspidal part mu alone; the class
    of the full constituent is computed by `constituent_parity`.  `partner`
    names the dual label mu* and is required exactly when mu is not
    self-dual.
    """

    label: str
    deg_mu: int
    duality: str
    su2_dim: int = 1
    partner: Optional[str] = None

    def __post_init__(self):
        if self.deg_mu < 1 or self.su2_dim < 1:
            raise ValueError("degrees must be positive")
        if self.duality not in _DUALITIES:
            raise ValueError("unknown duality %r" % (self.duality,))
        if (self.partner is not None) != (self.duality == NOT_SELF_DUAL):
            raise ValueError("partner must be given iff mu is not self-dual")
        if self.partner == self.label:
            raise ValueError("partnering must be fixed-point free")

    @property
    def degree(self) -> int:
        return self.deg_mu * self.su2_dim

    @property
    def mu_sign(self) -> Optional[int]:
        """Parity of mu as a sign, or None if mu is not self-dual."""
        if self.duality == ORTHOGONAL:
            return 1
        if self.duality == SYMPLECTIC:
            return -1
        return None


def constituent_parity(sp: SimpleParameter) -> str:
    """Duality class of mu (x) nu(n): nu(n) is orthogonal for n odd and
    symplectic for n even, and parities multiply."""
    if sp.duality == NOT_SELF_DUAL:
        return NOT_SELF_DUAL
    sign = sp.mu_sign * (-1) ** (sp.su2_dim - 1)
    return ORTHOGONAL if sign == 1 else SYMPLECTIC


def constituent_sign(sp: SimpleParameter) -> Optional[int]:
    """Same as `constituent_parity` but as +1/-1, None if not self-dual."""
    if sp.duality == NOT_SELF_DUAL:
        return None
    return sp.mu_sign * (-1) ** (sp.su2_dim - 1)


@dataclass(frozen=True)
class SimpleDatumTag:
    """A simple twisted datum (U(N), kappa); its parity is (-1)^(N-1) kappa."""

    N: int
    kappa: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.kappa not in (1, -1):
            raise ValueError("kappa must be +1 or -1")

    @property
    def parity(self) -> int:
        return (-1) ** (self.N - 1) * self.kappa


class GlobalParameter:
    """A conjugate self-dual formal sum of simple constituents.

    Constituents are stored in a canonical order, keyed by
    (deg_mu, su2_dim, label), with multiplicities merged.  Construction
    checks that not-self-dual constituents are closed under partnering with
    equal multiplicities.
    """

    __slots__ = ("constituents", "total_degree", "_by_label")

    def __init__(self, constituents: Iterable):
        merged = {}
        for sp, mult in constituents:
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            if sp in merged:
                merged[sp] += mult
            else:
                merged[sp] = mult
        labels = {}
        for sp in merged:
            if sp.label in labels:
                raise ValueError("duplicate label %r" % sp.label)
            labels[sp.label] = sp
        for sp, mult in merged.items():
            if sp.duality == NOT_SELF_DUAL:
                mate = labels.get(sp.partner)
                if mate is None:
                    raise ValueError("missing partner %r" % sp.partner)
                if mate.partner != sp.label:
                    raise ValueError("partnering is not an involution")
                if (mate.deg_mu, mate.su2_dim) != (sp.deg_mu, sp.su2_dim):
                    raise ValueError("partners must share degree data")
                if mate.duality != NOT_SELF_DUAL:
                    raise ValueError("partner of a non-self-dual mu must be non-self-dual")
                if merged[mate] != mult:
                    raise ValueError("partnered constituents need equal multiplicity")
        order = sorted(merged, key=lambda s: (s.deg_mu, s.su2_dim, s.label))
        self.constituents = tuple((sp, merged[sp]) for sp in order)
        self.total_degree = sum(sp.degree * l for sp, l in self.constituents)
        self._by_label = {sp.label: (sp, l) for sp, l in self.constituents}
        if self.total_degree < 1:
            raise ValueError("empty parameter")

    def __eq__(self, other):
        return isinstance(other, GlobalParameter) and self.constituents == other.constituents

    def __hash__(self):
        return hash(self.constituents)

    def __repr__(self):
        parts = []
        for sp, l in self.constituents:
            head = "%d*" % l if l > 1 else ""
            parts.append("%s%s(x)nu(%d)" % (head, sp.label, sp.su2_dim))
        return "GlobalParameter<%s>" % " + ".join(parts)

    def constituent(self, label: str):
        return self._by_label[label]

    @property
    def self_dual(self):
        """Constituents with self-dual mu, in canonical order."""
        return tuple((sp, l) for sp, l in self.constituents if sp.duality != NOT_SELF_DUAL)

    @property
    def dual_pair_orbits(self):
        """One representative (sp, l) per partnered orbit of non-self-dual
        constituents; the representative has the smaller label."""
        out = []
        for sp, l in self.constituents:
            if sp.duality == NOT_SELF_DUAL and sp.label < sp.partner:
                out.append((sp, l))
        return tuple(out)

    @property
    def is_generic(self) -> bool:
        return all(sp.su2_dim == 1 for sp, _ in self.constituents)


@dataclass(frozen=True)
class ChainMembership:
    """Membership flags in the discreteness chains of parameter sets.

    Satisfies in_sim => in_2 => in_ell => in_disc and
    in_2 => in_s_disc => in_disc.
    """

    in_sim: bool
    in_2: bool
    in_ell: bool
    in_s_disc: bool
    in_disc: bool
    is_generic: bool


def factors_through(psi: GlobalParameter, tag: SimpleDatumTag) -> bool:
    """Whether the parameter defines a parameter of the unitary datum.

    True iff every self-dual constituent whose parity is opposite to the
    datum parity has even multiplicity, so that its symplectic centralizer
    factor Sp(l) is well formed.  Non-self-dual constituents impose nothing
    beyond partnering, which is enforced at construction.
    """
    if psi.total_degree != tag.N:
        raise ValueError("degree mismatch: parameter has N=%d, datum N=%d"
                         % (psi.total_degree, tag.N))
    for sp, l in psi.self_dual:
        if constituent_sign(sp) != tag.parity and l % 2 != 0:
            return False
    return True


def _classify_twisted(psi: GlobalParameter) -> ChainMembership:
    # The twisted centralizer is connected, so sim = 2 and s-disc = disc.
    all_self_dual = len(psi.dual_pair_orbits) == 0
    mults_one = all(l == 1 for _, l in psi.constituents)
    simple = all_self_dual and mults_one and len(psi.constituents) == 1
    elliptic = all_self_dual and mults_one
    return ChainMembership(
        in_sim=simple,
        in_2=simple,
        in_ell=elliptic,
        in_s_disc=all_self_dual,
        in_disc=all_self_dual,
        is_generic=psi.is_generic,
    )


def classify(psi: GlobalParameter, tag: Optional[SimpleDatumTag] = None) -> ChainMembership:
    """Chain membership relative to a unitary datum, or (tag=None) to the
    twisted general linear group.

    Relative to a datum the flags are read off the centralizer
    prod O(l_i) x prod Sp(l_i) x prod GL(l_j): square-integrable needs all
    factors finite, elliptic needs an element with finite centralizer,
    s-disc and disc bound the center of the identity component and of the
    full group.  A parameter that does not factor through the datum gets
    all flags False (except genericity, a property of the parameter alone).
    """
    if tag is None:
        return _classify_twisted(psi)
    generic = psi.is_generic
    if not factors_through(psi, tag):
        return ChainMembership(False, False, False, False, False, generic)
    plus = [l for sp, l in psi.self_dual if constituent_sign(sp) == tag.parity]
    minus = [l for sp, l in psi.self_dual if constituent_sign(sp) != tag.parity]
    has_gl = len(psi.dual_pair_orbits) > 0
    in_2 = not has_gl and not minus and all(l == 1 for l in plus)
    in_sim = in_2 and len(plus) == 1
    in_ell = not has_gl and not minus and all(l <= 2 for l in plus)
    in_s_disc = not has_gl and all(l != 2 for l in plus)
    in_disc = not has_gl
    return ChainMembership(in_sim, in_2, in_ell, in_s_disc, in_disc, generic)
