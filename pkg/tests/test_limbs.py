import pytest

from kernels.counters import counting
from kernels.errors import RangeError, UsageError
from kernels.limbs import (
    FixedUint,
    Ordering,
    add_with_carry,
    cmp,
    cmp_examined,
    limbs_for_bits,
    mul_wide_limb,
    shl1,
    shr1,
    sub_with_borrow,
)

MAX32 = (1 << 32) - 1


def u(value, limbs=2, word_bits=32):
    return FixedUint.from_int(value, limbs, word_bits)


def test_limb_count_for_377_bits():
    assert limbs_for_bits(377, 32) == 12
    assert limbs_for_bits(377, 64) == 6
    assert limbs_for_bits(253, 32) == 8


def test_add_with_carry_examples():
    x = u(0x1234_5678_9ABC)
    assert add_with_carry(u(0), x) == (x, 0)
    s, carry = add_with_carry(u(MAX32), u(1))
    assert s.limbs == (0, 1) and carry == 0
    s, carry = add_with_carry(u((1 << 64) - 1), u(1))
    assert s.to_int() == 0 and carry == 1


def test_sub_with_borrow_examples():
    x = u(987654321)
    assert sub_with_borrow(x, u(0)) == (x, 0)
    assert sub_with_borrow(x, x) == (u(0), 0)
    d, borrow = sub_with_borrow(u(0), u(1))
    assert d.to_int() == (1 << 64) - 1 and borrow == 1


def test_shifts():
    assert shl1(u(0)) == (u(0), 0)
    assert shl1(u(1 << 31, limbs=1)) == (u(0, limbs=1), 1)
    assert shl1(u(3)) == (u(6), 0)
    assert shr1(u(7)) == (u(3), 1)
    assert shr1(u(0), msb_in=1) == (u(1 << 63), 0)


def test_cmp_examples():
    assert cmp(u(5), u(5)) == Ordering.EQ
    assert cmp(u(0), u(1)) == Ordering.LT
    assert cmp(u(1 << 32), u(MAX32)) == Ordering.GT


def test_mul_wide_limb_examples():
    assert mul_wide_limb(12345, 0, 0, 0) == (0, 0)
    assert mul_wide_limb(1, 987, 0, 0) == (0, 987)
    assert mul_wide_limb(MAX32, MAX32, MAX32, MAX32) == (MAX32, MAX32)


@pytest.mark.parametrize("limbs", [1, 2, 8, 12])
def test_matches_integer_oracle(rng, limbs):
    top = 1 << (32 * limbs)
    for _ in range(50):
        x, y = rng.randrange(top), rng.randrange(top)
        a, b = u(x, limbs), u(y, limbs)
        s, carry = add_with_carry(a, b)
        assert s.to_int() + carry * top == x + y
        d, borrow = sub_with_borrow(a, b)
        assert d.to_int() == (x - y) % top and borrow == int(x < y)
        back, borrow2 = sub_with_borrow(s, b)
        assert back == a and borrow2 == carry
        assert int(cmp(a, b)) == (x > y) - (x < y)


def test_counters_are_exact():
    a, b = u(5, 12), u(9, 12)
    with counting() as c:
        add_with_carry(a, b)
        sub_with_borrow(a, b)
        shl1(a)
        mul_wide_limb(1, 2, 3, 4)
    assert (c.limb_add, c.limb_sub, c.limb_shift, c.limb_muladd) == (12, 12, 12, 1)


def test_cmp_counts_examined_limbs(rng):
    with counting() as c:
        cmp(u(1 << 32), u(MAX32))
    assert c.limb_cmp == 1
    with counting() as c:
        cmp(u(7), u(7))
    assert c.limb_cmp == 2
    for _ in range(50):
        x, y = rng.randrange(1 << 96), rng.randrange(1 << 96)
        if rng.random() < 0.5:
            y = x ^ rng.randrange(1 << 20)
        with counting() as c:
            cmp(u(x, 3), u(y, 3))
        assert c.limb_cmp == cmp_examined(x, y, 3, 32)


def test_shape_mismatch_is_usage_error():
    with pytest.raises(UsageError):
        add_with_carry(u(1, 2), u(1, 3))
    with pytest.raises(UsageError):
        cmp(u(1, 2, 32), u(1, 1, 64))


def test_hex_width_is_exact():
    x = FixedUint.from_hex("0x00000001ffffffff", 2)
    assert x.limbs == (MAX32, 1)
    assert x.to_hex() == "00000001ffffffff"
    with pytest.raises(RangeError):
        FixedUint.from_hex("1ffffffff", 2)
    with pytest.raises(RangeError):
        FixedUint.from_int(1 << 64, 2)
