"""Stable multiplicity coefficients and a finite global-packet model.

The stable coefficient of a parameter against a datum is

    m * |S_psi|^-1 * eps_psi(s_psi) * sigma(Sbar^0_psi),

with m = 1 exactly when the parameter factors through the datum, S_psi the
component group, eps_psi the root-number sign character evaluated at the
canonical central element, and sigma the invariant of the identity
component modulo the central +-1.

The packet model is purely combinatorial: a member is a tuple of local
characters of the localized component groups (sign-vector functionals),
almost all trivial; its global character is the product of the local ones
pulled back through the localization maps.  The multiplicity of a member
is 1 when that product equals eps_psi and 0 otherwise, by orthogonality of
characters of the finite 2-group, so the spectral multiplicity formula
|S|^-1 sum_x eps(x) <x, pi> needs no further evaluation; both routes are
computed and compared in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .centralizer import (
    CentralizerShape,
    FiniteTwoGroup,
    LocalizationMap,
    centralizer_shape,
    component_group,
)
from .params import (
    GlobalParameter,
    SimpleDatumTag,
    SimpleParameter,
    classify,
    constituent_sign,
    factors_through,
)
from .signs import RootNumberTable, epsilon_character
from .weylnum import ConnectedShape, Factor, gl, sigma, so, sp


def identity_component_shape(shape: CentralizerShape) -> ConnectedShape:
    """S^0 modulo the central +-1 when that element lies in S^0."""
    factors: List[Factor] = []
    for _, l in shape.orthogonal:
        factors.append(so(l))
    for _, l in shape.symplectic:
        factors.append(sp(l))
    for _, l in shape.general_linear:
        factors.append(gl(l))
    central_in_s0 = all(l % 2 == 0 for _, l in shape.orthogonal)
    quotient = None
    if central_in_s0 and factors:
        quotient = (-1,) * len(factors)
    return ConnectedShape(tuple(factors), quotient)


def stable_coefficient(
    psi: GlobalParameter, tag: SimpleDatumTag, table: Optional[RootNumberTable] = None
) -> Fraction:
    """The stable coefficient; 0 when the parameter does not factor."""
    if psi.total_degree != tag.N or not factors_through(psi, tag):
        return Fraction(0)
    table = table or RootNumberTable()
    shape = centralizer_shape(psi, tag)
    group = component_group(shape)
    eps = epsilon_character(psi, tag, table)
    sig = sigma(identity_component_shape(shape))
    return Fraction(1, group.order) * eps.value_at_s_psi * sig


# ---------------------------------------------------------------------------
# Places and packet members


@dataclass(frozen=True)
class Place:
    """A place of the model: split places carry a trivial local group,
    inert places a localization refinement of the orthogonal labels."""

    name: str
    kind: str  # "inert" | "split"
    refinement: Optional[Dict[str, Tuple[str, ...]]] = None

    def __post_init__(self):
        if self.kind not in ("inert", "split"):
            raise ValueError("place kind must be inert or split")


class GlobalPlacesModel:
    """Localization data: one map of component groups per inert place."""

    def __init__(self, shape: CentralizerShape, places: Sequence[Place]):
        self.shape = shape
        self.places = tuple(places)
        self.maps: Dict[str, LocalizationMap] = {}
        for place in self.places:
            if place.kind == "split":
                continue
            refinement = place.refinement
            if refinement is None:
                refinement = {lab: (lab,) for lab in shape.plus_labels}
            self.maps[place.name] = LocalizationMap(shape, refinement)

    def inert_places(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.places if p.kind == "inert")


@dataclass(frozen=True)
class PacketMember:
    """Local characters, one sign per local orthogonal label per inert
    place; split places are singletons with the trivial pairing."""

    local_characters: Tuple[Tuple[str, Tuple[int, ...]], ...]

    def character_at(self, place: str) -> Tuple[int, ...]:
        for name, chi in self.local_characters:
            if name == place:
                return chi
        return ()


def _member_global_character(
    member: PacketMember, model: GlobalPlacesModel, group: FiniteTwoGroup
) -> Tuple[int, ...]:
    """Exponent vector (as evaluations on the generators) of the product
    character x -> prod_v <x_v, pi_v>, checked well defined on the
    component group."""
    for name, locmap in model.maps.items():
        chi = member.character_at(name)
        if len(chi) != len(locmap.local_labels):
            raise ValueError("character at %r has wrong arity" % name)
        if _char_value(chi, locmap.local_sigma_bar) != 1:
            raise ValueError("local character at %r not defined on the local group" % name)
    values = {}
    for vec in itertools.product((1, -1), repeat=len(group.labels)):
        val = 1
        for name, locmap in model.maps.items():
            chi = member.character_at(name)
            val *= _char_value(chi, locmap.apply(vec))
        values[vec] = val
    for vec, val in values.items():
        twin = tuple(a * b for a, b in zip(vec, group.sigma_bar))
        if values[twin] != val:
            raise ValueError("global character not defined on the component group")
    return tuple(values[vec] for vec in itertools.product((1, -1), repeat=len(group.labels)))


def _char_value(chi: Sequence[int], vector: Sequence[int]) -> int:
    val = 1
    for c, x in zip(chi, vector):
        if c == -1 and x == -1:
            val = -val
    return val


def spectral_multiplicity(
    psi: GlobalParameter,
    tag: SimpleDatumTag,
    table: RootNumberTable,
    member: PacketMember,
    model: GlobalPlacesModel,
) -> int:
    """Multiplicity |S|^-1 sum_x eps(x) <x, pi> of a packet member; 0 or 1."""
    flags = classify(psi, tag)
    if not flags.in_2:
        raise ValueError("spectral multiplicity needs a square-integrable parameter")
    shape = centralizer_shape(psi, tag)
    group = component_group(shape)
    eps = epsilon_character(psi, tag, table)
    total = Fraction(0)
    vectors = list(itertools.product((1, -1), repeat=len(group.labels)))
    member_vals = _member_global_character(member, model, group)
    for vec, mval in zip(vectors, member_vals):
        total += eps.evaluate(vec) * mval
    total /= len(vectors)
    if total not in (0, 1):
        raise AssertionError("spectral multiplicity must be 0 or 1")
    return int(total)


def enumerate_members(model: GlobalPlacesModel) -> List[PacketMember]:
    """All members over the model: every tuple of local characters."""
    per_place = []
    names = model.inert_places()
    for name in names:
        locmap = model.maps[name]
        chars = []
        for chi in itertools.product((1, -1), repeat=len(locmap.local_labels)):
            if _char_value(chi, locmap.local_sigma_bar) != 1:
                continue  # not defined on the local component group
            chars.append(chi)
        per_place.append(chars)
    out = []
    for combo in itertools.product(*per_place):
        out.append(PacketMember(tuple(zip(names, combo))))
    return out


@dataclass(frozen=True)
class SpectrumLine:
    psi: GlobalParameter
    members_selected: int
    members_total: int


def decompose_discrete_spectrum(
    seed: Sequence[SimpleParameter],
    tag: SimpleDatumTag,
    table: RootNumberTable,
    places: Sequence[Place],
) -> List[SpectrumLine]:
    """Enumerate the square-integrable parameters of degree N built from the
    seed constituents, and count packet members of multiplicity one.

    Square-integrable parameters are multiplicity-free sums of self-dual
    constituents of the datum parity; qualifying subsets of the seed with
    the right total degree are enumerated exhaustively.
    """
    usable = [
        sp
        for sp in seed
        if constituent_sign(sp) == tag.parity
    ]
    out: List[SpectrumLine] = []
    for r in range(1, len(usable) + 1):
        for combo in itertools.combinations(usable, r):
            if len({sp.label for sp in combo}) != len(combo):
                continue
            if sum(sp.degree for sp in combo) != tag.N:
                continue
            psi = GlobalParameter([(sp, 1) for sp in combo])
            if not classify(psi, tag).in_2:
                continue
            shape = centralizer_shape(psi, tag)
            model = GlobalPlacesModel(shape, places)
            members = enumerate_members(model)
            selected = sum(
                spectral_multiplicity(psi, tag, table, m, model) for m in members
            )
            out.append(SpectrumLine(psi, selected, len(members)))
    out.sort(key=lambda line: repr(line.psi))
    return out
