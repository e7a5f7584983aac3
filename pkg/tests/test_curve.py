import random

import pytest

from kernels.counters import counting, uncounted
from kernels.curve import (
    INFINITY_HEX,
    AffinePoint,
    Form,
    affine,
    affine_coords,
    batch_padd_affine,
    batch_to_affine,
    convert,
    enumerate_points,
    fixed_base_mul_many,
    identity,
    is_on_curve,
    neg,
    padd,
    pdbl,
    point_from_hex,
    point_to_hex,
    points_equal,
    sample_points,
    scalar_mul,
)
from kernels.errors import ParameterError, UsageError
from kernels.curve import CurveParams
from kernels.presets import bls12_moduli, get_curve, get_field

# (add, sub, dbl, mul, sqr, inv)
EXPECTED_COUNTS = {
    (Form.AFFINE, "padd"): (0, 6, 0, 3, 0, 1),
    (Form.AFFINE, "pdbl"): (2, 4, 2, 2, 2, 1),
    (Form.JACOBIAN, "padd"): (1, 8, 5, 7, 4, 0),
    (Form.JACOBIAN, "pdbl"): (2, 6, 6, 2, 5, 0),
    (Form.XYZZ, "padd"): (0, 6, 1, 8, 2, 0),
    (Form.XYZZ, "pdbl"): (1, 3, 3, 6, 3, 0),
}


def _affine_add(curve, p, q):
    """整数仿射加法，None 表示无穷远点"""
    m = curve.field.modulus
    if p is None:
        return q
    if q is None:
        return p
    if p[0] == q[0] and (p[1] + q[1]) % m == 0:
        return None
    if p == q:
        lam = (3 * p[0] * p[0] + curve.a4.value) * pow(2 * p[1], -1, m) % m
    else:
        lam = (q[1] - p[1]) * pow(q[0] - p[0], -1, m) % m
    x3 = (lam * lam - p[0] - q[0]) % m
    return x3, (lam * (p[0] - x3) - p[1]) % m


def _generic_operands(curve, form, rng, normalized_rhs=True):
    with uncounted():
        p_aff, q_aff = sample_points(curve, 2, rng)
        p = pdbl(convert(p_aff, form))
        q = convert(q_aff, form) if normalized_rhs else pdbl(convert(q_aff, form))
    return p, q


def test_toy_group_order(toy):
    points = enumerate_points(toy)
    assert toy.order == len(points) + 1 == 19
    assert toy.scalar_field is None
    g = toy.generator
    assert (g.x.value, g.y.value) == points[0]
    assert scalar_mul(g, toy.order).is_identity()
    multiples = set()
    acc = None
    for _ in range(toy.order - 1):
        acc = _affine_add(toy, acc, points[0])
        multiples.add(acc)
    assert multiples == set(points)


@pytest.mark.parametrize("form", list(Form))
def test_toy_addition_table(toy, form):
    points = enumerate_points(toy)
    for a in points[::3]:
        for b in points[::2]:
            p = convert(affine(toy, *a), form)
            q = convert(affine(toy, *b), form)
            assert affine_coords(padd(p, q)) == _affine_add(toy, a, b)
            assert affine_coords(padd(p, q, allow_mixed=False)) == _affine_add(toy, a, b)
        assert affine_coords(pdbl(convert(affine(toy, *a), form))) == _affine_add(toy, a, a)


@pytest.mark.parametrize("form", list(Form))
def test_identity_and_inverse(bls377, form, rng):
    p = convert(sample_points(bls377, 1, rng)[0], form)
    o = identity(bls377, form)
    assert points_equal(padd(o, p), p)
    assert points_equal(padd(p, o), p)
    assert padd(p, neg(p)).is_identity()
    assert points_equal(padd(p, p), pdbl(p))
    assert pdbl(o).is_identity()
    assert is_on_curve(pdbl(p))


@pytest.mark.parametrize("form", list(Form))
@pytest.mark.parametrize("allow_mixed", [True, False])
def test_exceptional_addition_counts_only_the_taken_path(bls377, form, allow_mixed, rng):
    p = convert(sample_points(bls377, 1, rng)[0], form)
    with counting() as delta:
        padd(p, p, allow_mixed=allow_mixed)
    assert (delta.padd, delta.pdbl) == (0, 1)
    with counting() as delta:
        assert padd(p, neg(p), allow_mixed=allow_mixed).is_identity()
    assert (delta.padd, delta.pdbl) == (0, 0)


@pytest.mark.parametrize("form,op", list(EXPECTED_COUNTS))
def test_generic_path_counts(bls377, form, op):
    rng = random.Random(7)
    p, q = _generic_operands(bls377, form, rng)
    with counting() as delta:
        if op == "padd":
            padd(p, q)
        else:
            pdbl(p)
    assert tuple(delta.ff_counts().values()) == EXPECTED_COUNTS[(form, op)]
    assert getattr(delta, op) == 1


@pytest.mark.parametrize("form", [Form.JACOBIAN, Form.XYZZ])
def test_full_and_mixed_addition_agree(bls377, form, rng):
    p, q = _generic_operands(bls377, form, rng)
    mixed = padd(p, q)
    full = padd(p, q, allow_mixed=False)
    assert points_equal(mixed, full)
    _, r = _generic_operands(bls377, form, rng, normalized_rhs=False)
    assert not r.is_normalized()
    assert points_equal(padd(p, r), padd(convert(p, Form.AFFINE), convert(r, Form.AFFINE)))


def test_conversion_preserves_affine_image(bls377, rng):
    p = sample_points(bls377, 1, rng)[0]
    for src in Form:
        for dst in Form:
            moved = convert(pdbl(convert(p, src)), dst)
            assert moved.form == dst
            assert points_equal(moved, pdbl(p))


def test_batch_to_affine_shares_one_inversion(bls377, rng):
    pts = [pdbl(convert(p, Form.XYZZ)) for p in sample_points(bls377, 8, rng)]
    pts.append(identity(bls377, Form.XYZZ))
    with counting() as delta:
        out = batch_to_affine(pts)
    assert delta.ff_inv == 1
    assert out[-1].is_identity()
    assert all(points_equal(a, b) for a, b in zip(out, pts))


def test_batch_padd_affine(bls377, rng):
    pts = sample_points(bls377, 16, rng)
    lhs, rhs = pts[:8], pts[8:]
    with counting() as delta:
        out = batch_padd_affine(lhs, rhs)
    assert delta.ff_inv == 1
    assert all(points_equal(o, padd(a, b)) for o, a, b in zip(out, lhs, rhs))
    with pytest.raises(UsageError):
        batch_padd_affine(lhs, rhs[:3])


def test_scalar_mul_and_fixed_base(toy):
    g = toy.generator
    expected = None
    for k in range(toy.order + 2):
        assert affine_coords(scalar_mul(g, k)) == expected
        expected = _affine_add(toy, expected, (g.x.value, g.y.value))
    many = fixed_base_mul_many(g, [0, 1, 5, 18])
    assert [affine_coords(p) for p in many] == [affine_coords(scalar_mul(g, k)) for k in (0, 1, 5, 18)]


def test_point_hex(bls377, rng):
    p = sample_points(bls377, 1, rng)[0]
    text = point_to_hex(p)
    assert len(text) == 2 * 96
    assert points_equal(point_from_hex(bls377, text), p)
    assert point_to_hex(identity(bls377, Form.JACOBIAN)) == INFINITY_HEX
    assert point_from_hex(bls377, "infinity").is_identity()
    bad = text[:96] + point_to_hex(pdbl(p))[96:]
    with pytest.raises(UsageError):
        point_from_hex(bls377, bad)


def test_mismatched_operands(bls377, toy, rng):
    p = sample_points(bls377, 1, rng)[0]
    with pytest.raises(UsageError):
        padd(p, convert(p, Form.JACOBIAN))
    with pytest.raises(UsageError):
        padd(p, toy.generator)


def test_bls12_presets():
    q, r, h = bls12_moduli(0x8508C00000000001)
    assert r == 0x12AB655E9A2CA55660B44D1E5C37B00159AA76FED00000010A11800000000001
    assert q.bit_length() == 377
    _, r381, _ = bls12_moduli(-0xD201000000010000)
    assert r381 == 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
    assert get_field("bls12-377-fr").two_adicity == 47
    for name in ("bls12-377-g1", "bls12-381-g1"):
        curve = get_curve(name)
        assert curve.a4.is_zero()
        assert is_on_curve(curve.generator)
        assert scalar_mul(curve.generator, curve.order).is_identity()


def test_unknown_preset_and_singular_curve(f17):
    with pytest.raises(UsageError):
        get_curve("secp256k1")
    with pytest.raises(ParameterError):
        CurveParams.build("singular", f17, 0, 0, order=1, cofactor=1)


def test_affine_identity_is_flagged(toy):
    o = AffinePoint.identity(toy)
    assert o.is_identity()
    assert affine_coords(o) is None
