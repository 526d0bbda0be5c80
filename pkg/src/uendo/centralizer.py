"""Centralizer shapes, component groups, and the normalizer diagram.

For a parameter factoring through a unitary datum the centralizer inside
GL(N, C) is

    S = prod_{i in I+} O(l_i) x prod_{i in I-} Sp(l_i) x prod_{j in J} GL(l_j),

where I+ (resp. I-) collects the self-dual constituents whose parity agrees
(resp. disagrees) with the datum and J holds one representative per
partnered pair.  The component group of S modulo the central {+-1} is the
elementary abelian 2-group Sigma/<sigma_bar>, with Sigma the sign vectors
on I+ and sigma_bar the vector that is -1 exactly on the odd-multiplicity
indices.  The normalizer of a maximal torus of S fits into a pair of short
exact sequences

    1 -> S^1 -> N -> W -> 1,      1 -> W^0 -> N -> S -> 1,

with S^1 the sign vectors supported on odd indices and R = W/W^0 the sign
vectors on even indices; the second sequence splits canonically.  These
groups are realized concretely: N is enumerated as tuples of signed
permutations (one per torus block) plus free component bits on the odd
orthogonal factors, modulo the central relation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .params import (
    GlobalParameter,
    SimpleDatumTag,
    SimpleParameter,
    constituent_sign,
    factors_through,
)


@dataclass(frozen=True)
class CentralizerShape:
    """Shape data of S: (constituent, multiplicity) per factor family."""

    orthogonal: Tuple[Tuple[SimpleParameter, int], ...]
    symplectic: Tuple[Tuple[SimpleParameter, int], ...]
    general_linear: Tuple[Tuple[SimpleParameter, int], ...]

    @property
    def plus_labels(self) -> Tuple[str, ...]:
        return tuple(sp.label for sp, _ in self.orthogonal)

    @property
    def odd_plus_labels(self) -> Tuple[str, ...]:
        return tuple(sp.label for sp, l in self.orthogonal if l % 2)

    @property
    def even_plus_labels(self) -> Tuple[str, ...]:
        return tuple(sp.label for sp, l in self.orthogonal if l % 2 == 0)

    def mult(self, label: str) -> int:
        for family in (self.orthogonal, self.symplectic, self.general_linear):
            for sp, l in family:
                if sp.label == label:
                    return l
        raise KeyError(label)

    @property
    def center_vector(self) -> Tuple[int, ...]:
        """Image of -1 as a sign vector on the orthogonal coordinates."""
        return (-1,) * len(self.orthogonal)


def centralizer_shape(psi: GlobalParameter, tag: SimpleDatumTag) -> CentralizerShape:
    """Split the self-dual constituents by parity against the datum."""
    if not factors_through(psi, tag):
        raise ValueError("parameter does not factor through the datum")
    orth, symp = [], []
    for sp, l in psi.self_dual:
        if constituent_sign(sp) == tag.parity:
            orth.append((sp, l))
        else:
            symp.append((sp, l))
    return CentralizerShape(tuple(orth), tuple(symp), psi.dual_pair_orbits)


@dataclass(frozen=True)
class FiniteTwoGroup:
    """Sign vectors on `labels` modulo the subgroup generated by sigma_bar."""

    labels: Tuple[str, ...]
    sigma_bar: Tuple[int, ...]

    @property
    def ambient_order(self) -> int:
        return 2 ** len(self.labels)

    @property
    def order(self) -> int:
        if any(s == -1 for s in self.sigma_bar):
            return self.ambient_order // 2
        return self.ambient_order

    def canonical(self, vector: Tuple[int, ...]) -> Tuple[int, ...]:
        """Smaller of the two coset representatives (lexicographic, +1 < -1)."""
        other = tuple(a * b for a, b in zip(vector, self.sigma_bar))
        key = lambda v: tuple(0 if x == 1 else 1 for x in v)
        return vector if key(vector) <= key(other) else other

    def elements(self) -> List[Tuple[int, ...]]:
        seen = []
        found = set()
        for vec in itertools.product((1, -1), repeat=len(self.labels)):
            rep = self.canonical(vec)
            if rep not in found:
                found.add(rep)
                seen.append(rep)
        return seen

    def same_class(self, u: Tuple[int, ...], v: Tuple[int, ...]) -> bool:
        return self.canonical(u) == self.canonical(v)


def component_group(shape: CentralizerShape) -> FiniteTwoGroup:
    """The component group of S modulo the central +-1, as sign vectors on
    the orthogonal coordinates modulo the all-(-1)-on-odd-indices relation."""
    labels = shape.plus_labels
    sigma_bar = tuple(-1 if l % 2 else 1 for _, l in shape.orthogonal)
    return FiniteTwoGroup(labels, sigma_bar)


def brute_force_order(shape: CentralizerShape) -> int:
    """Independent count of Sigma/<sigma_bar> by explicit enumeration."""
    n = len(shape.orthogonal)
    sigma_bar = tuple(-1 if l % 2 else 1 for _, l in shape.orthogonal)
    classes = set()
    for vec in itertools.product((1, -1), repeat=n):
        twin = tuple(a * b for a, b in zip(vec, sigma_bar))
        classes.add(min(vec, twin))
    return len(classes)


# ---------------------------------------------------------------------------
# Normalizer model


def _signed_perm_group(rank: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Signed permutations of the given rank as (perm, signs) pairs."""
    out = []
    for perm in itertools.permutations(range(rank)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append((perm, signs))
    return out


def _perm_group(rank: int):
    return [(perm, (1,) * rank) for perm in itertools.permutations(range(rank))]


def _flip_parity(elem) -> int:
    return elem[1].count(-1) % 2


@dataclass(frozen=True)
class NormalizerElement:
    """An element of N: per-block signed permutations plus the component
    bits of the odd orthogonal factors (canonicalized modulo the center)."""

    blocks: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]
    odd_bits: Tuple[int, ...]

    @property
    def weyl_key(self):
        return self.blocks


class NormalizerModel:
    """Concrete model of the groups in the torus-normalizer diagram.

    Blocks are ordered: orthogonal factors (torus rank floor(l/2)), then
    symplectic factors (rank l/2), then general linear factors (rank l).
    Elements carry one free component bit per odd orthogonal factor; even
    orthogonal factors have component equal to the sign-flip parity of
    their block.  Two elements are identified when they differ by the
    central element (all bits flipped on the odd orthogonal factors).
    """

    def __init__(self, shape: CentralizerShape):
        self.shape = shape
        self.orth = shape.orthogonal
        self.symp = shape.symplectic
        self.gl = shape.general_linear
        self.block_meta = []
        for sp, l in self.orth:
            self.block_meta.append(("O", sp, l, l // 2))
        for sp, l in self.symp:
            self.block_meta.append(("Sp", sp, l, l // 2))
        for sp, l in self.gl:
            self.block_meta.append(("GL", sp, l, l))
        self.odd_labels = shape.odd_plus_labels
        self.group = component_group(shape)

    def weyl_blocks(self):
        per_block = []
        for kind, _, _, rank in self.block_meta:
            if kind == "GL":
                per_block.append(_perm_group(rank))
            else:
                per_block.append(_signed_perm_group(rank))
        return per_block

    def w0_order(self) -> int:
        order = 1
        for kind, _, l, rank in self.block_meta:
            if kind == "O":
                if l % 2 == 0 and rank >= 1:
                    order *= 2 ** max(rank - 1, 0) * math.factorial(rank)
                else:
                    order *= 2 ** rank * math.factorial(rank)
            elif kind == "Sp":
                order *= 2 ** rank * math.factorial(rank)
            else:
                order *= math.factorial(rank)
        return order

    def w_order(self) -> int:
        order = 1
        for kind, _, l, rank in self.block_meta:
            if kind == "GL":
                order *= math.factorial(rank)
            else:
                order *= 2 ** rank * math.factorial(rank)
        return order

    def elements(self) -> List[NormalizerElement]:
        """Duplicate-free enumeration of N."""
        out = []
        seen = set()
        n_odd = len(self.odd_labels)
        for blocks in itertools.product(*self.weyl_blocks()):
            for bits in itertools.product((1, -1), repeat=n_odd):
                elem = self._canonical(blocks, bits)
                if elem not in seen:
                    seen.add(elem)
                    out.append(elem)
        return out

    def _canonical(self, blocks, bits) -> NormalizerElement:
        if self.odd_labels:
            flipped = tuple(-b for b in bits)
            bits = min(bits, flipped)
        return NormalizerElement(tuple(blocks), tuple(bits))

    def component_vector(self, elem: NormalizerElement) -> Tuple[int, ...]:
        """Image of the element in the sign vectors on I+ (before the
        central quotient): flip parity on even factors, free bit on odd."""
        vec = []
        odd_pos = 0
        for idx, (sp, l) in enumerate(self.orth):
            block = elem.blocks[idx]
            if l % 2 == 0:
                vec.append(-1 if _flip_parity(block) else 1)
            else:
                vec.append(elem.odd_bits[odd_pos])
                odd_pos += 1
        return tuple(vec)

    def image_in_s(self, elem: NormalizerElement) -> Tuple[int, ...]:
        return self.group.canonical(self.component_vector(elem))

    def r_vector(self, elem: NormalizerElement) -> Tuple[int, ...]:
        """Image in R: flip parities of the even orthogonal blocks."""
        vec = []
        for idx, (sp, l) in enumerate(self.orth):
            if l % 2 == 0:
                vec.append(-1 if _flip_parity(elem.blocks[idx]) else 1)
        return tuple(vec)


@dataclass(frozen=True)
class LeviDiagram:
    """Orders and realizations of the groups in the normalizer diagram."""

    w0_order: int
    w_order: int
    n_order: int
    s_order: int
    s1_elements: Tuple[Tuple[int, ...], ...]
    r_labels: Tuple[str, ...]
    exact: bool
    splitting_ok: bool

    @property
    def r_order(self) -> int:
        return 2 ** len(self.r_labels)

    @property
    def s1_order(self) -> int:
        return len(self.s1_elements)


def s1_subgroup(shape: CentralizerShape) -> List[Tuple[int, ...]]:
    """Image in the component group of the sign vectors supported on the
    odd-multiplicity orthogonal indices."""
    group = component_group(shape)
    odd_idx = [i for i, (_, l) in enumerate(shape.orthogonal) if l % 2]
    images = set()
    for bits in itertools.product((1, -1), repeat=len(odd_idx)):
        vec = [1] * len(shape.orthogonal)
        for pos, b in zip(odd_idx, bits):
            vec[pos] = b
        images.add(group.canonical(tuple(vec)))
    return sorted(images, key=lambda v: tuple(0 if x == 1 else 1 for x in v))


def splitting_section(shape: CentralizerShape):
    """The canonical section R -> S: put the R-signs on the even indices."""
    group = component_group(shape)
    even_idx = [i for i, (_, l) in enumerate(shape.orthogonal) if l % 2 == 0]

    def section(r_vec: Tuple[int, ...]) -> Tuple[int, ...]:
        vec = [1] * len(shape.orthogonal)
        for pos, b in zip(even_idx, r_vec):
            vec[pos] = b
        return group.canonical(tuple(vec))

    return section


def levi_diagram(psi: GlobalParameter, tag: SimpleDatumTag) -> LeviDiagram:
    """Build the diagram data and verify exactness and the splitting."""
    shape = centralizer_shape(psi, tag)
    model = NormalizerModel(shape)
    group = model.group
    elements = model.elements()
    n_order = len(elements)
    w_keys = {e.weyl_key for e in elements}
    w_order = len(w_keys)
    w0 = model.w0_order()
    s_order = group.order
    s1_images = s1_subgroup(shape)
    exact = (n_order == s_order * w0) and (n_order == len(s1_images) * w_order)
    # the composite S^1 -> S -> R must be trivial and section o proj = id
    section = splitting_section(shape)
    even_count = len(shape.even_plus_labels)
    splitting_ok = True
    for r_vec in itertools.product((1, -1), repeat=even_count):
        img = section(tuple(r_vec))
        # project back to R: read off the even coordinates of either rep
        back = _project_to_r(shape, group, img)
        if back != tuple(r_vec):
            splitting_ok = False
    for v in s1_images:
        if _project_to_r(shape, group, v) != (1,) * even_count:
            splitting_ok = False
    return LeviDiagram(
        w0_order=w0,
        w_order=w_order,
        n_order=n_order,
        s_order=s_order,
        s1_elements=tuple(s1_images),
        r_labels=shape.even_plus_labels,
        exact=exact,
        splitting_ok=splitting_ok,
    )


def _project_to_r(shape: CentralizerShape, group: FiniteTwoGroup, vec) -> Tuple[int, ...]:
    """Projection S -> R; well defined because sigma_bar is trivial on the
    even coordinates."""
    even_idx = [i for i, (_, l) in enumerate(shape.orthogonal) if l % 2 == 0]
    return tuple(vec[i] for i in even_idx)


# ---------------------------------------------------------------------------
# Localization


class LocalizationMap:
    """The component-group map induced by refining each global self-dual
    constituent into local ones with inherited multiplicity (the diagonal
    embedding O(l) -> O(l)^m on each orthogonal factor).

    Refinement keys must be exactly the orthogonal-factor labels: parity is
    preserved under localization, so a symplectic- or general-linear-factor
    constituent cannot refine into the orthogonal coordinates.
    """

    def __init__(self, shape: CentralizerShape, refinement: Dict[str, Iterable[str]]):
        self.shape = shape
        self.refinement = {k: tuple(v) for k, v in refinement.items()}
        allowed = set(shape.plus_labels)
        for key in self.refinement:
            if key not in allowed:
                raise ValueError("refinement key %r is not an orthogonal-factor label" % key)
        for sp, _ in shape.orthogonal:
            if sp.label not in self.refinement or not self.refinement[sp.label]:
                raise ValueError("refinement missing for %r" % sp.label)
        # local orthogonal labels, each possibly shared by several globals
        local: Dict[str, List[int]] = {}
        for idx, (sp, l) in enumerate(shape.orthogonal):
            for loc in self.refinement[sp.label]:
                local.setdefault(loc, []).append(idx)
        self.local_labels = tuple(sorted(local))
        self.local_sources = {k: tuple(v) for k, v in local.items()}
        self.local_mults = {
            k: sum(shape.orthogonal[i][1] for i in v) for k, v in self.local_sources.items()
        }
        self.local_sigma_bar = tuple(
            -1 if self.local_mults[k] % 2 else 1 for k in self.local_labels
        )
        self.local_group = FiniteTwoGroup(self.local_labels, self.local_sigma_bar)

    def apply(self, vector: Tuple[int, ...]) -> Tuple[int, ...]:
        """Push a global sign vector to the local coordinates."""
        out = []
        for k in self.local_labels:
            prod = 1
            for i in self.local_sources[k]:
                prod *= vector[i]
            out.append(prod)
        return self.local_group.canonical(tuple(out))

    def is_injective(self) -> bool:
        group = component_group(self.shape)
        images = {}
        for vec in group.elements():
            img = self.apply(vec)
            if img in images and images[img] != group.canonical(vec):
                return False
            images[img] = group.canonical(vec)
        return True


def localization_map(shape: CentralizerShape, refinement: Dict[str, Iterable[str]]) -> LocalizationMap:
    return LocalizationMap(shape, refinement)
