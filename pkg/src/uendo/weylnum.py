"""Weyl-set invariants of components of complex reductive groups.

A `ComponentDatum` describes a connected component S of a (possibly
disconnected) reductive group over C whose identity component S^0 is a
product of classical factors GL(a), Sp(2b), SO(m), optionally divided by an
order-2 central subgroup.  The component is the identity one, or is twisted
factorwise: the non-identity coset of O(m) acting on SO(m), or the
transpose-inverse coset on a GL factor.

For such a component the module computes, in exact rational arithmetic,

    i(S) = |W(S)|^-1 sum_{w in W_reg(S)} sgn^0(w) / |det(w - 1)|,

the elliptic-class expansion

    e(S) = sum_{s in E_ell(S)} |pi_0(S_s)|^-1 sigma(S_s^0),

and the constants sigma attached to connected groups by the recursion that
forces i = e together with sigma(S/Z) = sigma(S) |Z|.

Weyl sets are realized as (signed) permutation matrices on the character
lattice of a maximal torus: permutations on GL factors (negated under the
transpose-inverse twist), signed permutations of rank b on Sp(2b), of rank
floor(m/2) on SO(m) with even sign count for the identity component of
SO(even) and odd sign count for its O-coset.  det(w - 1) is taken on the
full lattice, so central torus directions kill regularity.  Elliptic
elements are enumerated through +-1 eigenvalue patterns: an eigenvalue pair
{t, 1/t}, t != +-1, would put a GL factor in the centralizer and hence an
infinite center.  The identity i(S) = e(S) over the supported menu is the
correctness certificate for both realizations and is asserted in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

GL = "GL"
SP = "Sp"
SO = "SO"

_MAX_SIGMA_DEPTH = 16


@dataclass(frozen=True)
class Factor:
    """One classical factor: GL(size), Sp(size) with size even, or SO(size)."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (GL, SP, SO):
            raise ValueError("unsupported factor type %r" % (self.kind,))
        if self.kind == GL and self.size < 1:
            raise ValueError("GL factor needs size >= 1")
        if self.kind == SP and (self.size < 2 or self.size % 2):
            raise ValueError("Sp factor needs positive even size")
        if self.kind == SO and self.size < 1:
            raise ValueError("SO factor needs size >= 1")

    @property
    def rank(self) -> int:
        if self.kind == GL:
            return self.size
        return self.size // 2

    @property
    def center_dim(self) -> int:
        if self.kind == GL:
            return 1
        if self.kind == SO and self.size == 2:
            return 1
        return 0

    @property
    def has_minus_one(self) -> bool:
        """Whether the scalar -1 lies in the factor."""
        if self.kind == SO:
            return self.size % 2 == 0
        return True

    @property
    def center_order(self) -> int:
        """Order of the center when finite (kinds with center_dim 0)."""
        if self.kind == SP:
            return 2
        if self.kind == SO:
            if self.size == 1:
                return 1
            if self.size % 2 == 1:
                return 1
            return 2  # SO(even >= 4)
        raise ValueError("infinite center")


def gl(a: int) -> Factor:
    return Factor(GL, a)


def sp(n: int) -> Factor:
    return Factor(SP, n)


def so(m: int) -> Factor:
    return Factor(SO, m)


@dataclass(frozen=True)
class ConnectedShape:
    """A product of classical factors, optionally modulo an order-2 central
    subgroup given by one sign per factor (-1 only where the factor contains
    the scalar -1)."""

    factors: Tuple[Factor, ...]
    central_quotient: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        z = self.central_quotient
        if z is not None:
            if len(z) != len(self.factors):
                raise ValueError("central element needs one sign per factor")
            if any(s not in (1, -1) for s in z):
                raise ValueError("central element entries must be +-1")
            if all(s == 1 for s in z):
                raise ValueError("central quotient by the identity; use None")
            for f, s in zip(self.factors, z):
                if s == -1 and not f.has_minus_one:
                    raise ValueError("-1 is not central in %r" % (f,))

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def center_dim(self) -> int:
        return sum(f.center_dim for f in self.factors)

    def canonical(self) -> "ConnectedShape":
        z = self.central_quotient or (1,) * len(self.factors)
        pairs = sorted(zip(self.factors, z), key=lambda p: (p[0].kind, p[0].size, -p[1]))
        fs = tuple(p[0] for p in pairs)
        zs = tuple(p[1] for p in pairs)
        return ConnectedShape(fs, zs if any(s == -1 for s in zs) else None)


@dataclass(frozen=True)
class ComponentDatum:
    """A connected component: a ConnectedShape plus per-factor coset flags.

    A True flag means the non-identity coset: the O(m) coset over an SO(m)
    factor, or the transpose-inverse coset over a GL factor.  Sp factors are
    connected and admit no twist.
    """

    base: ConnectedShape
    coset: Tuple[bool, ...]

    def __post_init__(self):
        if len(self.coset) != len(self.base.factors):
            raise ValueError("one coset flag per factor required")
        for f, t in zip(self.base.factors, self.coset):
            if t and f.kind == SP:
                raise ValueError("Sp factors have no outer coset")

    @property
    def is_identity(self) -> bool:
        return not any(self.coset)


def identity_component(shape: ConnectedShape) -> ComponentDatum:
    return ComponentDatum(shape, (False,) * len(shape.factors))


# ---------------------------------------------------------------------------
# Weyl sets


def _perm_matrix(perm, signs=None):
    n = len(perm)
    signs = signs or (1,) * n
    rows = [[0] * n for _ in range(n)]
    for j, (i, s) in enumerate(zip(perm, signs)):
        rows[i][j] = s
    return tuple(tuple(r) for r in rows)


def _signed_perms(rank, sign_parity=None):
    """All signed permutation matrices of the given rank; sign_parity 0/1
    restricts the number of -1 signs mod 2."""
    if rank == 0:
        yield ()
        return
    for perm in itertools.permutations(range(rank)):
        for signs in itertools.product((1, -1), repeat=rank):
            if sign_parity is not None and signs.count(-1) % 2 != sign_parity:
                continue
            yield _perm_matrix(perm, signs)


def _factor_weyl_blocks(factor: Factor, twisted: bool):
    """Action matrices on the factor's lattice for its Weyl set."""
    r = factor.rank
    if factor.kind == GL:
        mats = [_perm_matrix(p) for p in itertools.permutations(range(r))]
        if twisted:
            mats = [tuple(tuple(-x for x in row) for row in m) for m in mats]
        return mats
    if factor.kind == SP:
        return list(_signed_perms(r))
    # SO(m)
    if factor.size % 2 == 1:
        # O(odd) = SO(odd) x {+-1}: the coset acts through the same matrices.
        return list(_signed_perms(r))
    if not twisted:
        return list(_signed_perms(r, sign_parity=0))
    return list(_signed_perms(r, sign_parity=1))


def _factor_positive_roots(factor: Factor):
    """Positive roots of the identity component on the factor lattice."""
    r = factor.rank
    roots = []

    def e(i, c=1):
        v = [0] * r
        v[i] = c
        return v

    def pair(i, j, cj):
        v = [0] * r
        v[i] = 1
        v[j] = cj
        return v

    if factor.kind == GL:
        for i in range(r):
            for j in range(i + 1, r):
                roots.append(pair(i, j, -1))
        return roots
    for i in range(r):
        for j in range(i + 1, r):
            roots.append(pair(i, j, -1))
            roots.append(pair(i, j, 1))
    if factor.kind == SP:
        for i in range(r):
            roots.append(e(i, 2))
    elif factor.size % 2 == 1:
        for i in range(r):
            roots.append(e(i, 1))
    return roots


def _apply(mat, vec):
    return tuple(sum(mat[i][j] * vec[j] for j in range(len(vec))) for i in range(len(vec)))


def _det_minus_one(mat):
    """det(mat - I) over the integers (fraction-free elimination)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[Fraction(mat[i][j] - (1 if i == j else 0)) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    assert det.denominator == 1
    return int(det)


@dataclass(frozen=True)
class WeylElement:
    """One element of the Weyl set, stored blockwise per factor."""

    blocks: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def matrix(self):
        n = sum(len(b) for b in self.blocks)
        rows = [[0] * n for _ in range(n)]
        off = 0
        for b in self.blocks:
            for i, row in enumerate(b):
                for j, x in enumerate(row):
                    rows[off + i][off + j] = x
            off += len(b)
        return tuple(tuple(r) for r in rows)


def weyl_set(c: ComponentDatum):
    """Complete enumeration of W(S) = Norm(T, S)/T as lattice actions."""
    per_factor = [
        _factor_weyl_blocks(f, t) for f, t in zip(c.base.factors, c.coset)
    ]
    return [WeylElement(blocks) for blocks in itertools.product(*per_factor)]


def sgn0(c: ComponentDatum, w: WeylElement) -> int:
    """(-1) to the number of positive roots of (S^0, T) sent to negative."""
    flips = 0
    for f, block in zip(c.base.factors, w.blocks):
        for root in _factor_positive_roots(f):
            img = _apply(block, tuple(root))
            # roots of these lattices are sign-definite: compare to -root
            if _first_nonzero(img) < 0:
                flips += 1
    return -1 if flips % 2 else 1


def _first_nonzero(vec):
    for x in vec:
        if x:
            return x
    return 0


def det_w_minus_one(w: WeylElement) -> int:
    d = 1
    for block in w.blocks:
        d *= _det_minus_one(block)
    return d


def i_number(c: ComponentDatum) -> Fraction:
    """i(S): signed count of regular Weyl classes, exact."""
    ws = weyl_set(c)
    total = Fraction(0)
    for w in ws:
        d = det_w_minus_one(w)
        if d == 0:
            continue
        total += Fraction(sgn0(c, w), abs(d))
    return total / len(ws)


# ---------------------------------------------------------------------------
# Elliptic classes and e(S)


@dataclass(frozen=True)
class _EllClass:
    """One elliptic class of a single factor component.

    descriptor: canonical label used for central-translation bookkeeping;
    cent_factors: factors of the identity component of the centralizer;
    pi0: component count of the full centralizer in S^0.
    """

    descriptor: tuple
    cent_factors: Tuple[Factor, ...]
    pi0: int


def _factor_elliptic_classes(factor: Factor, twisted: bool):
    out = []
    if factor.kind == GL:
        if not twisted:
            return out  # scalars give an infinite center
        a = factor.size
        for mplus in range(a, -1, -1):
            rest = a - mplus
            if rest % 2:
                continue
            if mplus == 2:
                continue  # SO(2) in the centralizer: infinite center
            cent = []
            if mplus >= 3:
                cent.append(so(mplus))
            if rest >= 2:
                cent.append(sp(rest))
            out.append(_EllClass(("glinv", mplus, rest), tuple(cent), 2 if mplus >= 1 else 1))
        return out
    if factor.kind == SP:
        if twisted:
            raise ValueError("Sp factors have no outer coset")
        n = factor.size
        for nplus in range(0, n + 1, 2):
            nminus = n - nplus
            cent = []
            if nplus >= 2:
                cent.append(sp(nplus))
            if nminus >= 2:
                cent.append(sp(nminus))
            out.append(_EllClass(("sp", nplus, nminus), tuple(cent), 1))
        return out
    # SO(m): the coset fixes the determinant, so the -1 eigenvalue count
    # is even on the identity component and odd on the O(m) coset.
    m = factor.size
    want_parity = 1 if twisted else 0
    for mminus in range(m + 1):
        if mminus % 2 != want_parity:
            continue
        mplus = m - mminus
        if mplus == 2 or mminus == 2:
            continue  # SO(2) in the centralizer
        cent = []
        if mplus >= 3:
            cent.append(so(mplus))
        if mminus >= 3:
            cent.append(so(mminus))
        pi0 = 2 if (mplus >= 1 and mminus >= 1) else 1
        out.append(_EllClass(("so", mplus, mminus), tuple(cent), pi0))
    return out


def _translate_descriptor(desc, flip):
    """Action of the central sign -1 on a class descriptor."""
    if not flip:
        return desc
    kind = desc[0]
    if kind in ("sp", "so"):
        return (kind, desc[2], desc[1])
    return desc  # glinv classes are fixed: -g is congruent to g


def elliptic_classes(c: ComponentDatum):
    """Elliptic classes of the component as products of factor classes,
    before any central quotient.  Returns (descriptor tuple, centralizer
    shape, pi0) records."""
    per_factor = [
        _factor_elliptic_classes(f, t) for f, t in zip(c.base.factors, c.coset)
    ]
    out = []
    for combo in itertools.product(*per_factor):
        desc = tuple(cl.descriptor for cl in combo)
        cent = tuple(f for cl in combo for f in cl.cent_factors)
        pi0 = 1
        for cl in combo:
            pi0 *= cl.pi0
        out.append((desc, ConnectedShape(cent), pi0))
    return out


def e_number(c: ComponentDatum) -> Fraction:
    """e(S): sum over elliptic classes of sigma(S_s^0) / |pi_0(S_s)|.

    A central quotient fuses classes under translation by the nontrivial
    central element z and rescales; per z-orbit the contribution is
    sigma(S_s^0) |Z| / (|Z_s| pi0) with Z_s the stabilizer of the class.
    """
    classes = elliptic_classes(c)
    z = c.base.central_quotient
    if z is None:
        total = Fraction(0)
        for _, cent, pi0 in classes:
            s = sigma(cent)
            if s:
                total += Fraction(1, pi0) * s
        return total
    flips = tuple(s == -1 for s in z)
    seen = set()
    total = Fraction(0)
    for desc, cent, pi0 in classes:
        if desc in seen:
            continue
        tdesc = tuple(_translate_descriptor(d, f) for d, f in zip(desc, flips))
        stab = 2 if tdesc == desc else 1
        seen.add(desc)
        seen.add(tdesc)
        s = sigma(cent)
        if s:
            total += s * Fraction(2, stab * pi0)
    return total


# ---------------------------------------------------------------------------
# sigma


def sigma(shape: ConnectedShape) -> Fraction:
    """The constant sigma of a connected reductive group, by rank recursion.

    sigma vanishes on positive-dimensional centers, equals 1 on the trivial
    group, is fixed on semisimple groups by solving i(S) = e(S) for the
    identity component (central elliptic classes contribute sigma(S) itself,
    the others sigma of strictly smaller centralizers), and rescales under a
    finite central quotient as sigma(S/Z) = sigma(S) |Z|.
    """
    return _sigma_canonical(shape.canonical(), 0)


@lru_cache(maxsize=None)
def _sigma_canonical(shape: ConnectedShape, depth: int) -> Fraction:
    if depth > _MAX_SIGMA_DEPTH:
        raise RecursionError("sigma recursion exceeds configured depth")
    if shape.center_dim > 0:
        return Fraction(0)
    if not shape.factors:
        return Fraction(1)
    cover = ConnectedShape(shape.factors)
    quot = 2 if shape.central_quotient is not None else 1
    return _sigma_semisimple(cover, depth) * quot


def _sigma_semisimple(shape: ConnectedShape, depth: int) -> Fraction:
    datum = identity_component(shape)
    i_val = i_number(datum)
    central = 1
    for f in shape.factors:
        central *= f.center_order
    rest = Fraction(0)
    for desc, cent, pi0 in elliptic_classes(datum):
        if _is_central_class(desc, shape.factors):
            continue
        s = _sigma_canonical(cent.canonical(), depth + 1)
        if s:
            rest += Fraction(1, pi0) * s
    return (i_val - rest) / central


def _is_central_class(desc, factors):
    for d, f in zip(desc, factors):
        kind = d[0]
        if kind == "sp" and 0 not in (d[1], d[2]):
            return False
        if kind == "so" and 0 not in (d[1], d[2]):
            return False
        if kind == "glinv":
            return False
    return True
