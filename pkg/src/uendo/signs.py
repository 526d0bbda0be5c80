"""Sign characters from symplectic root numbers.

The adjoint Lie algebra of GL(N, C), pulled back through a parameter with
constituents mu_k (x) nu(n_k) of multiplicity l_k, decomposes into blocks
indexed by pairs of constituents.  Each block is a triple tensor of a
representation of the centralizer (an external tensor of standard factor
representations), a standard representation of the cuspidal data
(Rankin-Selberg between distinct labels, Asai family on the diagonal), and
irreducible SL(2)-constituents of nu(n_k) (x) nu(n_k').  A standard
representation is symplectic exactly when it is Rankin-Selberg between
self-dual labels of opposite cuspidal parity; diagonal blocks only carry
odd-dimensional SL(2) parts and are never symplectic.

The sign character evaluates, on a sign vector s, the determinants of the
centralizer parts over the blocks that are symplectic, have root number
epsilon(1/2, mu_k x mu_k'^c) = -1, and have an even-dimensional SL(2)
constituent: the exponent of det(s_k) is l_k' times the number of
even-dimensional constituents of nu(n_k) (x) nu(n_k'), which is
min(n_k, n_k') when n_k + n_k' is odd and zero otherwise.

Away from square-integrable parameters the same bookkeeping runs relative
to the Levi determined by the parameter: the character pulled back from the
Levi core, and the root-crossing sign that multiplies -1 per symplectic
root-number block crossed by a Weyl element.  Their product depends only on
the Weyl image and reproduces the crossing sign; this identity is asserted
over the tested families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .centralizer import (
    CentralizerShape,
    NormalizerElement,
    NormalizerModel,
    centralizer_shape,
    component_group,
)
from .params import (
    NOT_SELF_DUAL,
    GlobalParameter,
    SimpleDatumTag,
    SimpleParameter,
    factors_through,
)

ORTH = "orthogonal"
SYMP = "symplectic"
NSD = "not-self-dual"


# ---------------------------------------------------------------------------
# Clebsch-Gordan bookkeeping


def su2_tensor_dims(a: int, b: int) -> Tuple[int, ...]:
    """Dimensions in nu(a) (x) nu(b): |a-b|+1, |a-b|+3, ..., a+b-1."""
    return tuple(range(abs(a - b) + 1, a + b, 2))


def even_constituent_count(a: int, b: int) -> int:
    """Closed form: min(a, b) if a + b is odd, else 0."""
    return min(a, b) if (a + b) % 2 else 0


def sym2_dims(n: int) -> Tuple[int, ...]:
    """Dimensions in Sym^2 nu(n): 2n-1, 2n-5, ..."""
    return tuple(d for d in range(2 * n - 1, 0, -4))


def alt2_dims(n: int) -> Tuple[int, ...]:
    """Dimensions in Alt^2 nu(n): 2n-3, 2n-7, ..."""
    return tuple(d for d in range(2 * n - 3, 0, -4))


# ---------------------------------------------------------------------------
# Root number table


class RootNumberTable:
    """Signs epsilon(1/2, mu_k x mu_k'^c) for unordered pairs of self-dual
    labels of opposite cuspidal parity.  Same-parity pairs are forced to +1;
    missing opposite-parity pairs default to +1 and are recorded in
    `warned_pairs`.
    """

    def __init__(self, entries: Dict[FrozenSet[str], int] | None = None):
        self.entries: Dict[FrozenSet[str], int] = {}
        for key, val in (entries or {}).items():
            key = frozenset(key)
            if len(key) != 2:
                raise ValueError("root number keys are unordered label pairs")
            if val not in (1, -1):
                raise ValueError("root numbers must be +-1")
            self.entries[key] = val
        self.warned_pairs: set = set()

    @classmethod
    def from_text(cls, text: str) -> "RootNumberTable":
        """One entry per line: `label1 label2 -1` (or +1); '#' comments."""
        entries = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError("bad root-number line %r" % raw)
            a, b, val = parts
            if val not in ("1", "+1", "-1"):
                raise ValueError("bad sign %r" % val)
            entries[frozenset((a, b))] = 1 if val in ("1", "+1") else -1
        return cls(entries)

    def epsilon(self, k: SimpleParameter, kp: SimpleParameter) -> int:
        if k.duality == NOT_SELF_DUAL or kp.duality == NOT_SELF_DUAL:
            raise ValueError("root numbers apply to self-dual labels")
        key = frozenset((k.label, kp.label))
        same_parity = k.mu_sign == kp.mu_sign
        if same_parity:
            if self.entries.get(key, 1) != 1:
                raise ValueError(
                    "same-parity pair %r cannot carry root number -1" % (tuple(sorted(key)),)
                )
            return 1
        if key not in self.entries:
            self.warned_pairs.add(key)
            return 1
        return self.entries[key]

    def validate_against(self, psi: GlobalParameter) -> None:
        """Reject entries that touch undeclared or non-self-dual labels or
        pair labels of equal cuspidal parity with sign -1."""
        by_label = {sp.label: sp for sp, _ in psi.constituents}
        for key, val in self.entries.items():
            a, b = sorted(key)
            for lab in (a, b):
                if lab not in by_label:
                    raise ValueError("root-number label %r not declared" % lab)
                if by_label[lab].duality == NOT_SELF_DUAL:
                    raise ValueError("root-number label %r is not self-dual" % lab)
            if by_label[a].mu_sign == by_label[b].mu_sign and val == -1:
                raise ValueError(
                    "same-parity pair (%s, %s) cannot carry root number -1" % (a, b)
                )


# ---------------------------------------------------------------------------
# Adjoint decomposition


@dataclass(frozen=True)
class AdjointTerm:
    """One sigma-isotypic group of the adjoint decomposition.

    kind: ("RS", k, k'), ("RSdual", k, k*), ("Asai+", k) or ("Asai-", k);
    duality: orthogonal, symplectic, or not-self-dual;
    su2_dims: the SL(2) dimensions attached to this sigma and lambda;
    lam: descriptor of the centralizer part.
    """

    kind: Tuple[str, ...]
    duality: str
    su2_dims: Tuple[int, ...]
    lam: str


def _pair_duality(k: SimpleParameter, kp: SimpleParameter) -> str:
    if k.duality == NOT_SELF_DUAL or kp.duality == NOT_SELF_DUAL:
        return NSD
    return SYMP if k.mu_sign != kp.mu_sign else ORTH


def adjoint_decomposition(psi: GlobalParameter, tag: SimpleDatumTag) -> Tuple[AdjointTerm, ...]:
    """Term list of the adjoint block decomposition.

    Off-diagonal pairs of distinct orbit representatives produce one
    Rankin-Selberg term with the full tensor dimensions.  Each orbit
    representative also produces its diagonal family: Asai terms split along
    the symmetric/alternating SL(2) decomposition (a labelling convention:
    the plus label rides with the symmetric part on the sym2 side), plus a
    dual-pair Rankin-Selberg term for partnered orbits.  Terms with empty
    SL(2) content are dropped.  Non-self-dual terms stand for the dual pair
    (term, term*) jointly.
    """
    if not factors_through(psi, tag):
        raise ValueError("parameter does not factor through the datum")
    reps = list(psi.self_dual) + list(psi.dual_pair_orbits)
    reps.sort(key=lambda p: (p[0].deg_mu, p[0].su2_dim, p[0].label))
    terms: List[AdjointTerm] = []
    for (k, lk), (kp, lkp) in itertools.combinations(reps, 2):
        terms.append(
            AdjointTerm(
                kind=("RS", k.label, kp.label),
                duality=_pair_duality(k, kp),
                su2_dims=su2_tensor_dims(k.su2_dim, kp.su2_dim),
                lam="std(%s)(x)std(%s)" % (k.label, kp.label),
            )
        )
    for k, lk in reps:
        n = k.su2_dim
        sym, alt = sym2_dims(n), alt2_dims(n)
        asai_duality = ORTH if k.duality != NOT_SELF_DUAL else NSD
        plus_dims: List[Tuple[int, str]] = [(d, "sym2(%s)" % k.label) for d in sym]
        minus_dims: List[Tuple[int, str]] = [(d, "sym2(%s)" % k.label) for d in alt]
        if lk >= 2:
            plus_dims += [(d, "alt2(%s)" % k.label) for d in alt]
            minus_dims += [(d, "alt2(%s)" % k.label) for d in sym]
        for sign, dims in (("Asai+", plus_dims), ("Asai-", minus_dims)):
            by_lam: Dict[str, List[int]] = {}
            for d, lam in dims:
                by_lam.setdefault(lam, []).append(d)
            for lam in sorted(by_lam):
                terms.append(
                    AdjointTerm(
                        kind=(sign, k.label),
                        duality=asai_duality,
                        su2_dims=tuple(sorted(by_lam[lam])),
                        lam=lam,
                    )
                )
        if k.duality == NOT_SELF_DUAL:
            terms.append(
                AdjointTerm(
                    kind=("RSdual", k.label, k.partner),
                    duality=ORTH,
                    su2_dims=su2_tensor_dims(n, n),
                    lam="std(%s)(x)std(%s)" % (k.label, k.partner),
                )
            )
    return tuple(terms)


# ---------------------------------------------------------------------------
# The sign character


@dataclass(frozen=True)
class SignCharacter:
    """A character of the component group given by exponents of the
    orthogonal-coordinate determinants, plus its value at the image of
    -1 under the principal SL(2)."""

    labels: Tuple[str, ...]
    exponents: Tuple[int, ...]  # mod 2, aligned with labels
    value_at_s_psi: int

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def evaluate(self, vector: Sequence[int]) -> int:
        val = 1
        for x, e in zip(vector, self.exponents):
            if e and x == -1:
                val = -val
        return val


def _kminus_pairs(shape: CentralizerShape, table: RootNumberTable):
    """Unordered pairs of self-dual constituents contributing symplectic
    root-number blocks with even SL(2) parts, with their multiplicities."""
    sd = list(shape.orthogonal) + list(shape.symplectic)
    out = []
    for (k, lk), (kp, lkp) in itertools.combinations(sd, 2):
        if k.mu_sign == kp.mu_sign:
            continue
        count = even_constituent_count(k.su2_dim, kp.su2_dim)
        if count == 0:
            continue
        if table.epsilon(k, kp) != -1:
            continue
        out.append(((k, lk), (kp, lkp), count))
    return out


def s_psi_vector(shape: CentralizerShape) -> Tuple[int, ...]:
    """Determinants, per orthogonal factor, of the canonical central element
    coming from -1 in SL(2): the scalar (-1)^(n_k - 1) on each factor."""
    return tuple(
        ((-1) ** (sp.su2_dim - 1)) ** l for sp, l in shape.orthogonal
    )


def epsilon_character(
    psi: GlobalParameter, tag: SimpleDatumTag, table: RootNumberTable
) -> SignCharacter:
    """The sign character on the component group and its value at the
    canonical central element."""
    table.validate_against(psi)
    shape = centralizer_shape(psi, tag)
    labels = shape.plus_labels
    exps = {lab: 0 for lab in labels}
    for (k, lk), (kp, lkp), count in _kminus_pairs(shape, table):
        # det lambda(s) = det(s_k)^(l_k') det(s_k')^(l_k) per constituent
        if k.label in exps:
            exps[k.label] = (exps[k.label] + lkp * count) % 2
        if kp.label in exps:
            exps[kp.label] = (exps[kp.label] + lk * count) % 2
    exponents = tuple(exps[lab] for lab in labels)
    group = component_group(shape)
    char = SignCharacter(labels, exponents, 1)
    if char.evaluate(group.sigma_bar) != 1:
        raise AssertionError("sign character not defined on the component group")
    value = char.evaluate(s_psi_vector(shape))
    return SignCharacter(labels, exponents, value)


def epsilon_full_product(
    psi: GlobalParameter, tag: SimpleDatumTag, table: RootNumberTable, vector: Sequence[int]
) -> int:
    """Independent evaluation running over every SL(2) constituent of the
    symplectic root-number blocks, not only the even-dimensional ones.  Odd
    constituents contribute trivially through the even multiplicities of
    the symplectic factors, so this agrees with `epsilon_character`."""
    shape = centralizer_shape(psi, tag)
    coords = {sp.label: x for (sp, _), x in zip(shape.orthogonal, vector)}
    sd = list(shape.orthogonal) + list(shape.symplectic)
    val = 1
    for (k, lk), (kp, lkp) in itertools.combinations(sd, 2):
        if k.mu_sign == kp.mu_sign:
            continue
        if table.epsilon(k, kp) != -1:
            continue
        for _ in su2_tensor_dims(k.su2_dim, kp.su2_dim):
            det_k = coords.get(k.label, 1)
            det_kp = coords.get(kp.label, 1)
            val *= det_k ** lkp * det_kp ** lk
    return val


def is_epsilon_parameter(psi: GlobalParameter) -> bool:
    """Two simple self-dual constituents of equal cuspidal parity whose
    SL(2) tensor product has an odd number of even-dimensional parts."""
    if len(psi.constituents) != 2:
        return False
    (k, lk), (kp, lkp) = psi.constituents
    if lk != 1 or lkp != 1:
        return False
    if k.duality == NOT_SELF_DUAL or kp.duality == NOT_SELF_DUAL:
        return False
    if k.mu_sign != kp.mu_sign:
        return False
    return even_constituent_count(k.su2_dim, kp.su2_dim) % 2 == 1


# ---------------------------------------------------------------------------
# Relative signs on the normalizer


@dataclass(frozen=True)
class RelativeSigns:
    """eps1 on N, eps^(G/M) on W, and the crossing sign r^- on W, with the
    consistency flags of the factorization."""

    eps1: Dict[NormalizerElement, int]
    eps_gm: Dict[tuple, int]
    r_minus: Dict[tuple, int]
    fibers_constant: bool
    spectral_identity: bool


def _core_pairs(shape: CentralizerShape, table: RootNumberTable):
    """The sign-character pairs of the Levi core (the sum of the
    odd-multiplicity orthogonal constituents, each once), with their even
    SL(2) counts."""
    core = [sp for sp, l in shape.orthogonal if l % 2]
    out = []
    for k, kp in itertools.combinations(core, 2):
        if k.mu_sign == kp.mu_sign:
            continue
        count = even_constituent_count(k.su2_dim, kp.su2_dim)
        if count and table.epsilon(k, kp) == -1:
            out.append((k.label, kp.label, count))
    return out


def _zero_line_sign(block) -> int:
    """Determinant of the lift of a signed permutation on the zero-weight
    line of the odd orthogonal standard representation: -1 per cycle with
    an odd number of sign flips (lift independent, since the torus acts
    trivially on that line)."""
    perm, signs = block
    n = len(perm)
    seen = [False] * n
    val = 1
    for start in range(n):
        if seen[start]:
            continue
        flips = 0
        i = start
        while not seen[i]:
            seen[i] = True
            if signs[i] == -1:
                flips += 1
            i = perm[i]
        if flips % 2:
            val = -val
    return val


def _pair_count(k: SimpleParameter, kp: SimpleParameter, table: RootNumberTable) -> int:
    """Number of symplectic root-number blocks with even SL(2) part between
    two self-dual constituents."""
    if k.duality == NOT_SELF_DUAL or kp.duality == NOT_SELF_DUAL:
        return 0
    if k.mu_sign == kp.mu_sign:
        return 0
    count = even_constituent_count(k.su2_dim, kp.su2_dim)
    if count == 0 or table.epsilon(k, kp) != -1:
        return 0
    return count


def relative_signs(
    psi: GlobalParameter, tag: SimpleDatumTag, table: RootNumberTable
) -> RelativeSigns:
    """Run the relative-sign bookkeeping over the torus normalizer.

    Requires a proper Levi (the parameter must not be square-integrable).
    Torus coordinates correspond to the general linear blocks of the Levi:
    floor(l/2) copies of each orthogonal constituent, l/2 of each symplectic
    one, l of each partnered orbit; the core collects one copy of each
    odd-multiplicity orthogonal constituent.  The crossing sign of w is -1
    to the number of symplectic root-number blocks on roots taken negative
    by w, counting pairs of coordinates twice (the two root signs) and
    coordinate-against-core once.
    """
    table.validate_against(psi)
    shape = centralizer_shape(psi, tag)
    model = NormalizerModel(shape)
    if model.w_order() == 1:
        raise ValueError("parameter is square-integrable; no proper Levi")
    eps = epsilon_character(psi, tag, table)
    core_pairs = _core_pairs(shape, table)
    core_consts = [sp for sp, l in shape.orthogonal if l % 2]

    # torus coordinates: (constituent, block meta index) per rank unit
    coords: List[Tuple[SimpleParameter, int]] = []
    for meta_idx, (kind, sp, l, rank) in enumerate(model.block_meta):
        coords.extend((sp, meta_idx) for _ in range(rank))

    eps1: Dict[NormalizerElement, int] = {}
    eps_gm_by_w: Dict[tuple, set] = {}
    r_minus: Dict[tuple, int] = {}

    odd_index = {lab: i for i, lab in enumerate(model.odd_labels)}
    block_of = {sp.label: idx for idx, (_, sp, _, _) in enumerate(model.block_meta)}
    elements = model.elements()
    for elem in elements:
        # eps1: determinant of the element on the multiplicity lines of the
        # core sign-character pairs: component bit times the zero-weight-line
        # sign of the Weyl part, per constituent in the pair
        val = 1
        for lab_k, lab_kp, count in core_pairs:
            if count % 2 == 0:
                continue
            for lab in (lab_k, lab_kp):
                if elem.odd_bits[odd_index[lab]] == -1:
                    val = -val
                if _zero_line_sign(elem.blocks[block_of[lab]]) == -1:
                    val = -val
        eps1[elem] = val
        x_vec = model.component_vector(elem)
        g_val = eps.evaluate(x_vec)
        eps_gm_by_w.setdefault(elem.weyl_key, set()).add(g_val * val)

    for w_key in {e.weyl_key for e in elements}:
        r_minus[w_key] = _crossing_sign(model, coords, w_key, core_consts, table)

    fibers_constant = all(len(v) == 1 for v in eps_gm_by_w.values())
    eps_gm = {k: next(iter(v)) for k, v in eps_gm_by_w.items()}
    spectral = fibers_constant and all(
        r_minus[w] == eps_gm[w] for w in r_minus
    )
    return RelativeSigns(eps1, eps_gm, r_minus, fibers_constant, spectral)


def _signed_perm_image(block, pos: int) -> Tuple[int, int]:
    """Image of basis vector pos under a (perm, signs) block element."""
    perm, signs = block
    return perm[pos], signs[pos]


def _crossing_sign(model, coords, w_key, core_consts, table) -> int:
    """(-1) to the number of symplectic root-number constituents on the
    positive coordinate roots taken negative by w."""
    # absolute coordinate images: coordinate t -> (image coord, sign)
    images: List[Tuple[int, int]] = []
    offset = 0
    block_offsets = []
    for meta_idx, (kind, sp, l, rank) in enumerate(model.block_meta):
        block_offsets.append(offset)
        offset += rank
    for t, (sp, meta_idx) in enumerate(coords):
        base = block_offsets[meta_idx]
        pos = t - base
        img_pos, sign = _signed_perm_image(w_key[meta_idx], pos)
        images.append((base + img_pos, sign))

    total = 0
    n = len(coords)
    for a in range(n):
        ka = coords[a][0]
        # root e_a against the core (and its double 2e_a, which carries the
        # Asai family and never contributes)
        if core_consts:
            _, sign = images[a]
            if sign == -1:
                total += sum(_pair_count(ka, c, table) for c in core_consts)
        for b in range(a + 1, n):
            kb = coords[b][0]
            cnt = _pair_count(ka, kb, table)
            if cnt == 0:
                continue
            ia, sa = images[a]
            ib, sb = images[b]
            # e_a - e_b crosses iff the image is a negative root
            if _is_negative(ia, sa, ib, -sb):
                total += cnt
            # e_a + e_b
            if _is_negative(ia, sa, ib, sb):
                total += cnt
    return -1 if total % 2 else 1


def _is_negative(i1: int, s1: int, i2: int, s2: int) -> bool:
    """Whether s1 e_{i1} + s2 e_{i2} (i1 != i2) is a negative vector in the
    first-nonzero-coordinate order."""
    if i1 == i2:
        return s1 + s2 < 0
    lead = s1 if i1 < i2 else s2
    return lead < 0
