import pytest

from kernels.counters import counting
from kernels.errors import DomainError, UnsatisfiedInstanceError, UsageError
from kernels.field import ff_add, ff_mul, ff_pow, random_element
from kernels.ntt import (
    Direction,
    bit_reverse_permutation,
    build_domain,
    butterfly,
    compute_h,
    coset_ntt,
    dft_naive,
    evaluate_poly,
    ntt_radix2,
    ntt_staged,
    plan_stages,
    poly_mul,
    random_instance,
)
from kernels.presets import get_field


def _values(field, xs):
    return [field.element(x) for x in xs]


def _ints(values):
    return [v.value for v in values]


def test_f17_domain(f17):
    domain = build_domain(4, f17)
    assert domain.omega.value in (4, 13)
    assert ff_pow(domain.omega, 2).value == 16
    assert build_domain(1, f17).omega.is_one()
    with pytest.raises(DomainError):
        build_domain(3, f17)
    with pytest.raises(DomainError):
        build_domain(32, f17)
    with pytest.raises(DomainError):
        build_domain(4, f17, omega=2)


def test_f17_full_domain_allows_plain_transforms_only(f17, rng):
    domain = build_domain(16, f17)
    assert domain.vanishing_on_coset.is_zero()
    v = [random_element(f17, rng) for _ in range(16)]
    expected = dft_naive(v, domain)
    assert ntt_radix2(v, domain) == expected
    assert ntt_staged(v, domain, 2) == expected
    assert ntt_radix2(expected, domain, Direction.INVERSE) == v
    with pytest.raises(DomainError):
        coset_ntt(v, domain)
    with pytest.raises(DomainError):
        compute_h(v, v, [ff_mul(x, x) for x in v], domain)
    assert coset_ntt(v, domain, shift=f17.one()) == expected


def test_bls12_377_domain(fr377):
    domain = build_domain(1 << 10, fr377)
    assert ff_pow(domain.omega, 1 << 10).is_one()
    assert ff_pow(domain.omega, 1 << 9).value == fr377.modulus - 1
    assert not domain.vanishing_on_coset.is_zero()


def test_butterfly(f17):
    a = f17.element(5)
    assert butterfly(a, f17.zero(), f17.one()) == (a, a)
    with counting() as delta:
        out = butterfly(f17.element(1), f17.element(2), f17.element(4))
    assert _ints(out) == [9, 10]
    assert (delta.ff_mul, delta.ff_add, delta.ff_sub, delta.butterfly) == (1, 1, 1, 1)


def test_f17_transform_examples(f17):
    domain = build_domain(4, f17, omega=4)
    assert _ints(ntt_radix2(_values(f17, [1, 2, 3, 4]), domain)) == [10, 7, 15, 6]
    assert _ints(ntt_radix2(_values(f17, [1, 1, 1, 1]), domain)) == [4, 0, 0, 0]
    assert _ints(ntt_radix2(_values(f17, [1, 0, 0, 0]), domain)) == [1, 1, 1, 1]
    assert _ints(ntt_radix2(_values(f17, [10, 7, 15, 6]), domain, Direction.INVERSE)) == [1, 2, 3, 4]


def test_bit_reverse_permutation():
    assert bit_reverse_permutation(list(range(8))) == [0, 4, 2, 6, 1, 5, 3, 7]
    assert bit_reverse_permutation([7]) == [7]


@pytest.mark.parametrize("name", ["f17", "bls12-377-fr"])
def test_radix2_matches_dft(name, rng):
    field = get_field(name)
    max_log = 3 if name == "f17" else 10
    for log_n in range(1, max_log + 1):
        domain = build_domain(1 << log_n, field)
        v = [random_element(field, rng) for _ in range(domain.size)]
        forward = ntt_radix2(v, domain)
        assert forward == dft_naive(v, domain)
        assert ntt_radix2(forward, domain, Direction.INVERSE) == v
        assert dft_naive(forward, domain, Direction.INVERSE) == v


def test_butterfly_and_transform_counts(fr377, rng):
    for log_n in (1, 4, 7):
        domain = build_domain(1 << log_n, fr377)
        v = [random_element(fr377, rng) for _ in range(domain.size)]
        with counting() as delta:
            ntt_radix2(v, domain)
        assert delta.butterfly == (domain.size // 2) * log_n
        assert delta.transform == 1
        with counting() as staged:
            ntt_staged(v, domain, 3)
        assert staged.butterfly == delta.butterfly


def test_plan_stages():
    assert plan_stages(10, 8) == [(0, 8), (8, 2)]
    assert plan_stages(1, 8) == [(0, 1)]
    assert len(plan_stages(14, 3)) == 5
    with pytest.raises(UsageError):
        plan_stages(4, 0)
    with pytest.raises(UsageError):
        plan_stages(4, 9)


@pytest.mark.parametrize("radix_log", range(1, 9))
def test_staged_matches_radix2(fr377, f17, rng, radix_log):
    for field, sizes in ((f17, (2, 4, 8)), (fr377, (2, 8, 64, 1 << 10))):
        for n in sizes:
            domain = build_domain(n, field)
            v = [random_element(field, rng) for _ in range(n)]
            expected = ntt_radix2(v, domain)
            assert ntt_staged(v, domain, radix_log) == expected
            assert ntt_staged(expected, domain, radix_log, Direction.INVERSE) == v


@pytest.mark.slow
def test_staged_and_round_trip_at_scale(fr377, rng):
    domain = build_domain(1 << 14, fr377)
    v = [random_element(fr377, rng) for _ in range(domain.size)]
    forward = ntt_radix2(v, domain)
    assert ntt_radix2(forward, domain, Direction.INVERSE) == v
    for radix_log in (1, 5, 8):
        assert ntt_staged(v, domain, radix_log) == forward


def test_linearity(fr377, rng):
    domain = build_domain(32, fr377)
    u = [random_element(fr377, rng) for _ in range(32)]
    v = [random_element(fr377, rng) for _ in range(32)]
    alpha, beta = random_element(fr377, rng), random_element(fr377, rng)
    combined = [ff_add(ff_mul(alpha, x), ff_mul(beta, y)) for x, y in zip(u, v)]
    expected = [ff_add(ff_mul(alpha, x), ff_mul(beta, y)) for x, y in zip(ntt_radix2(u, domain), ntt_radix2(v, domain))]
    assert ntt_radix2(combined, domain) == expected


def test_size_mismatch(f17):
    domain = build_domain(4, f17)
    with pytest.raises(UsageError):
        ntt_radix2(_values(f17, [1, 2, 3]), domain)
    with pytest.raises(UsageError):
        coset_ntt(_values(f17, [1, 2]), domain)


def test_coset_transform(f17, fr377, rng):
    domain = build_domain(4, f17)
    v = _values(f17, [1, 2, 3, 4])
    g = domain.coset.value
    scaled = _values(f17, [x * pow(g, j, 17) for j, x in enumerate([1, 2, 3, 4])])
    assert coset_ntt(v, domain) == dft_naive(scaled, domain)
    assert coset_ntt(v, domain, shift=f17.one()) == ntt_radix2(v, domain)
    big = build_domain(64, fr377)
    w = [random_element(fr377, rng) for _ in range(64)]
    assert coset_ntt(coset_ntt(w, big), big, Direction.INVERSE) == w


def test_poly_mul(f17, fr377, rng):
    one_plus_x = _values(f17, [1, 1])
    assert _ints(poly_mul(one_plus_x, one_plus_x)) == [1, 2, 1]
    p = _values(f17, [3, 0, 5])
    assert poly_mul(p, [f17.one()]) == p
    a = [random_element(fr377, rng) for _ in range(32)]
    b = [random_element(fr377, rng) for _ in range(32)]
    r = fr377.modulus
    expected = [0] * 63
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            expected[i + j] = (expected[i + j] + x.value * y.value) % r
    assert _ints(poly_mul(a, b)) == expected
    with pytest.raises(UsageError):
        poly_mul(a, b, build_domain(32, fr377))


def test_compute_h_zero_quotient(fr377):
    domain = build_domain(8, fr377)
    ones = [fr377.one()] * 8
    with counting() as delta:
        h = compute_h(ones, ones, ones, domain)
    assert delta.transform == 7
    assert len(h) == 7
    assert all(x.is_zero() for x in h)


@pytest.mark.parametrize("trials", [pytest.param(10), pytest.param(100, marks=pytest.mark.slow)])
def test_compute_h_divisibility(fr377, rng, trials):
    domain = build_domain(1 << 6, fr377)
    for _ in range(trials):
        a, b, c = random_instance(domain, rng)
        with counting() as delta:
            h = compute_h(a, b, c, domain, check_points=8, rng=rng)
        assert delta.transform == 7
        a_coeffs = ntt_radix2(a, domain, Direction.INVERSE)
        b_coeffs = ntt_radix2(b, domain, Direction.INVERSE)
        c_coeffs = ntt_radix2(c, domain, Direction.INVERSE)
        r = fr377.modulus
        for _ in range(8):
            s = random_element(fr377, rng)
            lhs = (evaluate_poly(a_coeffs, s).value * evaluate_poly(b_coeffs, s).value - evaluate_poly(c_coeffs, s).value) % r
            rhs = evaluate_poly(h, s).value * (pow(s.value, domain.size, r) - 1) % r
            assert lhs == rhs


def test_compute_h_rejects_unsatisfied_instance(fr377, rng):
    domain = build_domain(16, fr377)
    a, b, c = random_instance(domain, rng)
    c[3] = ff_add(c[3], fr377.one())
    with pytest.raises(UnsatisfiedInstanceError):
        compute_h(a, b, c, domain)
