import itertools
from fractions import Fraction

from uendo.weylnum import (
    ComponentDatum,
    ConnectedShape,
    e_number,
    elliptic_classes,
    gl,
    i_number,
    identity_component,
    sgn0,
    sigma,
    so,
    sp,
    weyl_set,
)


def datum(factors, coset=None, quotient=None):
    coset = coset or (False,) * len(factors)
    return ComponentDatum(ConnectedShape(tuple(factors), quotient), tuple(coset))


# ---------------------------------------------------------------------------
# Weyl sets


def test_weyl_set_sp2():
    d = datum([sp(2)])
    ws = weyl_set(d)
    mats = sorted(w.matrix() for w in ws)
    assert mats == [((-1,),), ((1,),)]


def test_weyl_set_o2_nonidentity():
    # direct normalizer computation in O(2): every coset element acts on the
    # rank-1 lattice by inversion, and there is exactly one class
    d = datum([so(2)], [True])
    ws = weyl_set(d)
    assert len(ws) == 1
    assert ws[0].matrix() == ((-1,),)


def test_weyl_set_gl2():
    d = datum([gl(2)])
    ws = weyl_set(d)
    mats = {w.matrix() for w in ws}
    assert mats == {((1, 0), (0, 1)), ((0, 1), (1, 0))}


def test_weyl_count_matches_identity_component():
    cases = [
        ([so(4)], [False]),
        ([so(4)], [True]),
        ([so(3)], [True]),
        ([gl(3)], [True]),
        ([sp(4), so(2)], [False, True]),
    ]
    for factors, coset in cases:
        twisted = datum(factors, coset)
        plain = datum(factors)
        assert len(weyl_set(twisted)) == len(weyl_set(plain))


def test_weyl_elements_have_unit_determinant_blocks():
    d = datum([sp(4), gl(2)], [False, True])
    for w in weyl_set(d):
        m = w.matrix()
        n = len(m)
        # the action has finite order: some power is the identity
        power = m
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        for _ in range(24):
            if power == ident:
                break
            power = tuple(
                tuple(sum(power[i][k] * m[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
        assert power == ident


def test_sgn0_multiplicative_against_w0():
    # sgn^0(w0 w) = sgn^0(w0) sgn^0(w) for w0 in the identity-component Weyl
    # group; check on O(4): coset elements times W^0
    base = datum([so(4)])
    twisted = datum([so(4)], [True])
    w0s = weyl_set(base)
    ws = weyl_set(twisted)
    for w0 in w0s:
        for w in ws:
            prod_block = tuple(
                tuple(
                    tuple(
                        sum(a[i][k] * b[k][j] for k in range(len(a)))
                        for j in range(len(a))
                    )
                    for i in range(len(a))
                )
                for a, b in zip(w0.blocks, w.blocks)
            )
            from uendo.weylnum import WeylElement

            prod = WeylElement(prod_block)
            assert sgn0(twisted, prod) == sgn0(base, w0) * sgn0(twisted, w)


def test_sgn0_equals_determinant_on_weyl_groups():
    # for identity components the sign character is the determinant
    for factors in ([sp(2)], [sp(4)], [so(3)], [so(4)], [gl(3)]):
        d = datum(factors)
        for w in weyl_set(d):
            m = w.matrix()
            det = _det(m)
            assert sgn0(d, w) == det


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = sign
        for i in range(n):
            prod *= m[i][perm[i]]
        total += prod
    return total


# ---------------------------------------------------------------------------
# Known constants


def test_i_number_sp2_is_minus_quarter():
    assert i_number(datum([sp(2)])) == Fraction(-1, 4)


def test_i_number_o2_coset_is_half():
    d = datum([so(2)], [True])
    assert i_number(d) == Fraction(1, 2)
    assert e_number(d) == Fraction(1, 2)


def test_i_number_so2_torus_is_zero():
    assert i_number(datum([so(2)])) == 0


def test_e_number_examples():
    assert e_number(datum([sp(2)])) == Fraction(-1, 4)
    assert e_number(datum([gl(2)])) == 0


# ---------------------------------------------------------------------------
# sigma


def test_sigma_trivial_and_torus():
    assert sigma(ConnectedShape(())) == 1
    assert sigma(ConnectedShape((gl(1),))) == 0
    assert sigma(ConnectedShape((so(2),))) == 0


def test_sigma_sl2_from_independent_solve():
    # i(SL2) computed by hand: W = {1, -1}; only -1 regular, sgn0 = -1,
    # |det(-1-1)| = 2, so i = -1/4; elliptic classes {I, -I} both with
    # centralizer SL2, so -1/4 = 2 sigma and sigma = -1/8.
    assert i_number(datum([sp(2)])) == Fraction(-1, 4)
    assert sigma(ConnectedShape((sp(2),))) == Fraction(-1, 8)


def test_sigma_so3_from_independent_solve():
    # i(SO3): W = {1, -1} on the rank-1 lattice, positive root e_1;
    # the regular element -1 flips it, so i = (1/2)(-1/2) = -1/4; the only
    # elliptic class is central, hence sigma = i = -1/4.
    assert i_number(datum([so(3)])) == Fraction(-1, 4)
    assert sigma(ConnectedShape((so(3),))) == Fraction(-1, 4)


def test_sigma_rescales_under_central_quotient():
    for factors in ((sp(2),), (sp(4),), (so(4),), (sp(2), so(4))):
        cover = ConnectedShape(factors)
        quotient = ConnectedShape(factors, (-1,) * len(factors))
        assert sigma(cover) * 2 == sigma(quotient)


def test_sigma_multiplicative():
    a = ConnectedShape((sp(2),))
    b = ConnectedShape((so(3),))
    ab = ConnectedShape((sp(2), so(3)))
    assert sigma(ab) == sigma(a) * sigma(b)


def test_sigma_depth_guard_exists():
    from uendo.weylnum import _MAX_SIGMA_DEPTH

    assert _MAX_SIGMA_DEPTH > 0


# ---------------------------------------------------------------------------
# The identity i = e, and the twisted GL cross-check


def test_twisted_gl4_pins_sigma_values():
    # i for the transpose-inverse component of GL(4) uses no sigma values;
    # e needs sigma(SO4) and sigma(Sp4): a genuinely independent check.
    d = datum([gl(4)], [True])
    i_val = i_number(d)
    assert i_val == Fraction(11, 128)
    assert e_number(d) == i_val
    assert sigma(ConnectedShape((so(4),))) == Fraction(1, 32)
    assert sigma(ConnectedShape((sp(4),))) == Fraction(9, 128)


def _menu_data():
    dressed = []
    for a in (1, 2, 3):
        dressed.append((gl(a), False))
        dressed.append((gl(a), True))
    for n in (2, 4):
        dressed.append((sp(n), False))
    for m in (1, 2, 3, 4):
        dressed.append((so(m), False))
        dressed.append((so(m), True))
    return dressed


def test_i_equals_e_on_factor_sample():
    dressed = _menu_data()
    for f, t in dressed:
        d = ComponentDatum(ConnectedShape((f,)), (t,))
        assert i_number(d) == e_number(d), (f, t)


def test_i_equals_e_on_pairs_with_quotients():
    dressed = _menu_data()
    for (f1, t1), (f2, t2) in itertools.combinations_with_replacement(dressed, 2):
        base = ConnectedShape((f1, f2))
        d = ComponentDatum(base, (t1, t2))
        i_val = i_number(d)
        assert i_val == e_number(d), (f1, t1, f2, t2)
        for z in itertools.product((1, -1), repeat=2):
            if all(s == 1 for s in z):
                continue
            if any(s == -1 and not f.has_minus_one for f, s in zip((f1, f2), z)):
                continue
            dq = ComponentDatum(ConnectedShape((f1, f2), z), (t1, t2))
            assert i_number(dq) == i_val
            assert e_number(dq) == i_val, (f1, t1, f2, t2, z)


def test_i_zero_when_central_torus_fixed():
    # positive-dimensional center fixed by the coset: no regular elements
    for d in (datum([gl(2)]), datum([so(2)]), datum([gl(1), sp(2)])):
        assert i_number(d) == 0


def test_elliptic_classes_structure_sp4():
    classes = elliptic_classes(datum([sp(4)]))
    descs = {c[0] for c in classes}
    assert descs == {(("sp", 0, 4),), (("sp", 2, 2),), (("sp", 4, 0),)}
