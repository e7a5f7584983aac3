import pytest

from kernels.counters import counting
from kernels.errors import NonInvertibleError, ParameterError, RangeError, UsageError
from kernels.field import (
    FieldParams,
    batch_inverse,
    element_from_hex,
    element_to_hex,
    ff_add,
    ff_dbl,
    ff_inv,
    ff_mul,
    ff_neg,
    ff_pow,
    ff_sqr,
    ff_sqrt,
    ff_sub,
    from_mont,
    legendre,
    random_element,
    to_mont,
)
from kernels.presets import get_field


def test_f17_examples(f17):
    e = f17.element
    assert ff_add(e(16), e(1)).value == 0
    assert ff_mul(e(3), e(6)).value == 1
    assert ff_inv(e(3)).value == 6
    assert ff_sub(e(0), e(1)).value == 16
    assert ff_dbl(e(9)).value == 1
    assert ff_sqr(e(5)).value == 8
    assert ff_pow(e(0), 0).value == 1
    assert f17.generator == 3
    assert f17.two_adicity == 4
    assert ff_add(e(9), e(12)).value == 4
    assert ff_sub(e(3), e(9)).value == 11
    assert ff_mul(e(5), e(7)).value == 1
    assert ff_inv(e(4)).value == 13
    assert ff_pow(e(3), 5).value == 5
    assert ff_pow(e(3), 16).value == 1
    assert [v.value for v in batch_inverse([e(2), e(3), e(4)])] == [9, 6, 13]
    for x in range(17):
        assert ff_dbl(e(x)) == ff_add(e(x), e(x))


def test_montgomery_round_trip(fq377, rng):
    for _ in range(20):
        x = rng.randrange(fq377.modulus)
        assert from_mont(to_mont(fq377, x)).to_int() == x
    with pytest.raises(RangeError):
        to_mont(fq377, fq377.modulus)


@pytest.mark.parametrize("name", ["f17", "bls12-377-fr", "bls12-377-fq", "bls12-381-fr", "bls12-381-fq"])
def test_operations_match_integer_oracle(name, backend, rng):
    _check_against_oracle(get_field(name, backend=backend), 50, rng)


@pytest.mark.slow
def test_bls12_377_fr_oracle_ten_thousand(backend, rng):
    _check_against_oracle(get_field("bls12-377-fr", backend=backend), 10_000, rng)


def _check_against_oracle(params, samples, rng):
    p = params.modulus
    for _ in range(samples):
        x, y = rng.randrange(p), rng.randrange(1, p)
        a, b = params.element(x), params.element(y)
        assert ff_add(a, b).value == (x + y) % p
        assert ff_sub(a, b).value == (x - y) % p
        assert ff_neg(a).value == -x % p
        assert ff_dbl(a).value == 2 * x % p
        assert ff_mul(a, b).value == x * y % p
        assert ff_sqr(a).value == x * x % p
        assert ff_inv(b).value == pow(y, -1, p)
        assert ff_pow(b, 5).value == pow(y, 5, p)



def _check_axioms(params, samples, rng):
    zero, one = params.zero(), params.one()
    for _ in range(samples):
        a, b, c = (random_element(params, rng) for _ in range(3))
        assert ff_add(ff_add(a, b), c) == ff_add(a, ff_add(b, c))
        assert ff_mul(ff_mul(a, b), c) == ff_mul(a, ff_mul(b, c))
        assert ff_add(a, b) == ff_add(b, a)
        assert ff_mul(a, b) == ff_mul(b, a)
        assert ff_mul(a, ff_add(b, c)) == ff_add(ff_mul(a, b), ff_mul(a, c))
        assert ff_add(a, ff_neg(a)) == zero
        assert ff_sub(ff_add(a, b), b) == a
        if not a.is_zero():
            assert ff_mul(a, ff_inv(a)) == one


@pytest.mark.parametrize("name", ["f17", "bls12-377-fr", "bls12-381-fq"])
def test_field_axioms(name, rng):
    _check_axioms(get_field(name), 30, rng)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["f17", "bls12-377-fr", "bls12-377-fq", "bls12-381-fr", "bls12-381-fq"])
def test_field_axioms_ten_thousand(name, rng):
    _check_axioms(get_field(name), 10_000, rng)

@pytest.mark.parametrize("word_bits", [32, 64])
def test_backends_charge_identical_counters(word_bits, rng):
    native = get_field("bls12-377-fq", word_bits=word_bits)
    limb = native.with_backend("limb")
    for _ in range(10):
        x, y = rng.randrange(native.modulus), rng.randrange(1, native.modulus)
        outputs = []
        deltas = []
        for params in (native, limb):
            a, b = params.element(x), params.element(y)
            with counting() as delta:
                r = ff_inv(ff_sub(ff_dbl(ff_add(ff_mul(a, b), ff_sqr(a))), b))
            outputs.append(r.value)
            deltas.append(delta)
        assert outputs[0] == outputs[1]
        assert deltas[0] == deltas[1]


def test_mul_cost_is_fixed(fq377):
    L = fq377.limb_count
    a, b = fq377.element(3), fq377.element(fq377.modulus - 2)
    with counting() as delta:
        ff_mul(a, b)
    assert L == 12
    assert delta.limb_muladd == L * (2 * L + 1)
    assert delta.limb_add == 3 * L
    assert delta.limb_sub == L
    assert delta.weighted_limb_ops() == 648
    assert delta.bytes_touched == 3 * fq377.element_bytes


def test_mul_to_add_limb_ratio(fq377, rng):
    a = random_element(fq377, rng)
    b = random_element(fq377, rng)
    with counting() as mul_delta:
        ff_mul(a, b)
    with counting() as add_delta:
        ff_add(a, b)
    assert mul_delta.limb_total() >= 5 * add_delta.limb_total()


def test_inverse_of_zero_raises(f17):
    with pytest.raises(NonInvertibleError):
        ff_inv(f17.zero())
    with pytest.raises(ZeroDivisionError):
        ff_inv(f17.zero())


@pytest.mark.parametrize("n", [1, 2, 1024])
def test_batch_inverse(fr377, rng, n):
    values = [random_element(fr377, rng, nonzero=True) for _ in range(n)]
    with counting() as delta:
        inverses = batch_inverse(values)
    assert inverses == [ff_inv(v) for v in values]
    assert delta.ff_inv == 1
    assert delta.ff_mul == 3 * (n - 1)


def test_batch_inverse_reports_first_zero(f17):
    values = [f17.element(v) for v in (1, 2, 0, 5, 0)]
    with pytest.raises(NonInvertibleError) as info:
        batch_inverse(values)
    assert info.value.index == 2
    assert batch_inverse([]) == []


def test_sqrt_and_legendre(fq377, rng):
    for _ in range(10):
        x = random_element(fq377, rng, nonzero=True)
        square = ff_sqr(x)
        assert legendre(square) == 1
        root = ff_sqrt(square)
        assert root in (x, ff_neg(x))
    qnr = fq377.element(fq377.generator)
    assert legendre(qnr) == -1
    assert ff_sqrt(qnr) is None


def test_hex_round_trip_and_width(fq377):
    e = fq377.element(0xABCDEF)
    text = element_to_hex(e)
    assert len(text) == 96
    assert element_from_hex(fq377, text) == e
    with pytest.raises(RangeError):
        element_from_hex(fq377, text[1:])
    with pytest.raises(RangeError):
        element_from_hex(fq377, format(fq377.modulus, "096x"))


def test_parameter_validation():
    with pytest.raises(ParameterError):
        FieldParams.build("composite", 15)
    with pytest.raises(ParameterError):
        FieldParams.build("too-wide", (1 << 61) - 1, limb_count=1)
    with pytest.raises(UsageError):
        FieldParams.build("f17", 17, word_bits=16)


def test_mixing_fields_is_usage_error(f17, fr377):
    with pytest.raises(UsageError):
        ff_add(f17.one(), fr377.one())
