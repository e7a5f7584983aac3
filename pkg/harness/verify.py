"""
正确性自检：用各模块的参考实现（整数运算、穷举、O(n²) DFT、逐项标量乘、陷门）逐一对照
"""
import random
import traceback
from contextlib import contextmanager
from typing import Callable, Dict, Iterator, List, Optional

import kernels.msm as msm_kernels
from harness.reports import SuiteResult, VerifySummary
from kernels.counters import counting
from kernels.curve import Form, convert, enumerate_points, identity, is_on_curve, padd, points_equal, sample_points, scalar_mul
from kernels.errors import UsageError
from kernels.field import batch_inverse, ff_add, ff_inv, ff_mul, ff_sqr, ff_sub, random_element
from kernels.limbs import FixedUint, add_with_carry, cmp, shl1, shr1, sub_with_borrow
from kernels.ntt import Direction, build_domain, compute_h, dft_naive, ntt_radix2, ntt_staged, random_instance
from kernels.presets import get_curve, get_field
from kernels.prover import check_with_trapdoor, mock_setup, prove, random_inputs
from utils.logs import logger


class _Recorder:
    def __init__(self, name: str):
        self.result = SuiteResult(name=name)

    def check(self, condition: bool, message: str) -> None:
        if condition:
            self.result.passed += 1
        else:
            self.result.failed += 1
            self.result.failures.append(message)

    @contextmanager
    def guard(self, label: str) -> Iterator[None]:
        """用例内抛出的异常记为一次失败，不中断整个套件"""
        try:
            yield
        except Exception as e:
            logger.debug(traceback.format_exc())
            self.check(False, f"{label}: {type(e).__name__}: {e}")


def _suite_limbs(rec: _Recorder, rng: random.Random) -> None:
    for word_bits, limbs in ((32, 12), (64, 6), (32, 1)):
        bits = word_bits * limbs
        top = 1 << bits
        for _ in range(16):
            x, y = rng.randrange(top), rng.randrange(top)
            a = FixedUint.from_int(x, limbs, word_bits)
            b = FixedUint.from_int(y, limbs, word_bits)
            s, carry = add_with_carry(a, b)
            rec.check(s.to_int() + (carry << bits) == x + y, f"add {bits} 位: {x:#x} + {y:#x}")
            d, borrow = sub_with_borrow(a, b)
            rec.check(d.to_int() == (x - y) % top and borrow == int(x < y), f"sub {bits} 位: {x:#x} - {y:#x}")
            left, out = shl1(a)
            rec.check(left.to_int() == (2 * x) % top and out == x >> (bits - 1), f"shl1 {x:#x}")
            right, low = shr1(a)
            rec.check(right.to_int() == x >> 1 and low == x & 1, f"shr1 {x:#x}")
            rec.check(int(cmp(a, b)) == (x > y) - (x < y), f"cmp {x:#x} {y:#x}")


def _suite_field(rec: _Recorder, rng: random.Random) -> None:
    for name in ("f17", "bls12-377-fq", "bls12-381-fr"):
        native = get_field(name)
        limb = native.with_backend("limb")
        p = native.modulus
        for _ in range(8):
            x, y = rng.randrange(p), rng.randrange(1, p)
            with rec.guard(f"{name} {x} {y}"):
                for params in (native, limb):
                    a, b = params.element(x), params.element(y)
                    rec.check(ff_add(a, b).value == (x + y) % p, f"{params.backend} add {name}")
                    rec.check(ff_sub(a, b).value == (x - y) % p, f"{params.backend} sub {name}")
                    rec.check(ff_mul(a, b).value == x * y % p, f"{params.backend} mul {name}")
                    rec.check(ff_sqr(a).value == x * x % p, f"{params.backend} sqr {name}")
                    rec.check(ff_inv(b).value == pow(y, -1, p), f"{params.backend} inv {name}")
                with counting() as c_native:
                    ff_inv(ff_mul(native.element(x), native.element(y)))
                with counting() as c_limb:
                    ff_inv(ff_mul(limb.element(x), limb.element(y)))
                rec.check(c_native == c_limb, f"后端计数不一致 {name}")
        values = [random_element(native, rng, nonzero=True) for _ in range(16)]
        with counting() as delta:
            inverses = batch_inverse(values)
        rec.check(all(v.value * inv.value % p == 1 for v, inv in zip(values, inverses)), f"批量求逆 {name}")
        rec.check(delta.ff_inv == 1 and delta.ff_mul <= 3 * len(values), f"批量求逆计数 {name}")


def _suite_curve(rec: _Recorder, rng: random.Random) -> None:
    toy = get_curve("toy")
    points = enumerate_points(toy)
    rec.check(len(points) + 1 == toy.order * toy.cofactor, "穷举点数与群阶一致")
    g = toy.generator
    # 用整数仿射公式逐个累加，作为所有坐标形式的参考
    p = toy.field.modulus
    a4 = toy.a4.value
    expected: List[Optional[tuple]] = [None]
    cur = None
    gx, gy = g.x.value, g.y.value
    for _ in range(toy.order):
        if cur is None:
            cur = (gx, gy)
        elif cur[0] == gx and (cur[1] + gy) % p == 0:
            cur = None
        else:
            if cur == (gx, gy):
                lam = (3 * gx * gx + a4) * pow(2 * gy, -1, p) % p
            else:
                lam = (gy - cur[1]) * pow(gx - cur[0], -1, p) % p
            x3 = (lam * lam - cur[0] - gx) % p
            cur = (x3, (lam * (cur[0] - x3) - cur[1]) % p)
        expected.append(cur)
    rec.check(expected[-1] is None, "order·G 应为无穷远点")
    for form in Form:
        with rec.guard(f"toy {form.value}"):
            base = convert(g, form)
            acc = identity(toy, form)
            for k in range(1, toy.order + 1):
                acc = padd(acc, base)
                got = None if acc.is_identity() else convert(acc, Form.AFFINE)
                rec.check(
                    (got.x.value, got.y.value) == expected[k] if got else expected[k] is None,
                    f"toy {form.value} {k}·G",
                )
                rec.check(is_on_curve(acc), f"toy {form.value} {k}·G 不在曲线上")
            rec.check(points_equal(scalar_mul(base, 7), scalar_mul(g, 7)), f"toy {form.value} scalar_mul")
    bls = get_curve("bls12-377-g1")
    rec.check(scalar_mul(bls.generator, bls.order).is_identity(), "bls12-377 r·G 应为无穷远点")
    p1, p2 = sample_points(bls, 2, rng)
    for form in (Form.JACOBIAN, Form.XYZZ):
        with rec.guard(f"bls12-377 {form.value}"):
            got = padd(convert(p1, form), convert(p2, form), allow_mixed=False)
            rec.check(points_equal(got, padd(p1, p2)), f"bls12-377 {form.value} 完整加法")


def _suite_msm(rec: _Recorder, rng: random.Random) -> None:
    toy = get_curve("toy")
    all_points = [g for g in sample_points(toy, toy.order - 1, rng)]
    for n in (1, 2, 3, 5, 8, 13, 18):
        pts = [all_points[(i * 7) % len(all_points)] for i in range(n)]
        scalars = [rng.randrange(1 << toy.scalar_bits) for _ in range(n)]
        expected = msm_kernels.msm_naive(pts, scalars)
        for c in (1, 2, 3):
            for form in Form:
                with rec.guard(f"toy msm n={n} c={c} {form.value}"):
                    cfg = msm_kernels.MsmConfig(toy.scalar_bits, c, form)
                    rec.check(points_equal(msm_kernels.msm(pts, scalars, cfg), expected), f"toy msm n={n} c={c} {form.value}")
    bls = get_curve("bls12-377-g1")
    pts = sample_points(bls, 8, rng)
    scalars = [rng.randrange(bls.scalar_field.modulus) for _ in pts]
    expected = msm_kernels.msm_naive(pts, scalars)
    for c in (4, 13):
        with rec.guard(f"bls12-377 msm c={c}"):
            cfg = msm_kernels.MsmConfig(bls.scalar_bits, c)
            rec.check(points_equal(msm_kernels.msm(pts, scalars, cfg), expected), f"bls12-377 msm c={c}")
    with rec.guard("bls12-377 预计算 msm"):
        cfg = msm_kernels.MsmConfig(bls.scalar_bits, 16, precompute_factor=2)
        table = msm_kernels.precompute_points(pts, cfg)
        rec.check(points_equal(msm_kernels.msm_precomputed(table, scalars, cfg), expected), "bls12-377 预计算 msm")


def _suite_ntt(rec: _Recorder, rng: random.Random) -> None:
    for name, sizes in (("f17", (2, 4, 8, 16)), ("bls12-377-fr", (2, 4, 8, 16, 32, 64))):
        field = get_field(name)
        for n in sizes:
            with rec.guard(f"{name} ntt n={n}"):
                domain = build_domain(n, field)
                v = [random_element(field, rng) for _ in range(n)]
                expected = dft_naive(v, domain)
                rec.check(ntt_radix2(v, domain) == expected, f"{name} radix2 n={n}")
                for radix_log in (1, 2, 3, 8):
                    rec.check(ntt_staged(v, domain, radix_log) == expected, f"{name} staged r={radix_log} n={n}")
                rec.check(ntt_radix2(expected, domain, Direction.INVERSE) == v, f"{name} intt∘ntt n={n}")
    field = get_field("bls12-377-fr")
    domain = build_domain(16, field)
    for i in range(4):
        with rec.guard(f"compute_h #{i}"):
            a, b, c = random_instance(domain, rng)
            with counting() as delta:
                h = compute_h(a, b, c, domain, check_points=4, rng=rng)
            rec.check(delta.transform == 7, f"compute_h 变换次数 {delta.transform}")
            rec.check(len(h) == domain.size - 1, "compute_h 输出长度")


def _suite_prover(rec: _Recorder, rng: random.Random) -> None:
    curve = get_curve("bls12-377-g1")
    n = 8
    pk, trapdoor = mock_setup(n, n, rng.randrange(1 << 32), curve)
    domain = build_domain(n, curve.scalar_field)
    for i in range(3):
        with rec.guard(f"prove #{i}"):
            inputs = random_inputs(domain, n, rng)
            proof = prove(pk, inputs, domain=domain)
            rec.check(check_with_trapdoor(proof, trapdoor, inputs), f"诚实证明 #{i} 被拒绝")
            tampered = type(proof)(padd(proof.A, curve.generator), proof.C, proof.transcript)
            rec.check(not check_with_trapdoor(tampered, trapdoor, inputs), f"篡改的证明 #{i} 被接受")


SUITES: Dict[str, Callable[[_Recorder, random.Random], None]] = {
    "limbs": _suite_limbs,
    "field": _suite_field,
    "curve": _suite_curve,
    "msm": _suite_msm,
    "ntt": _suite_ntt,
    "prover": _suite_prover,
}


def verify_suite(seed: int = 2024, names: Optional[List[str]] = None) -> VerifySummary:
    """
    依次运行各正确性套件

    Args:
        seed: 随机种子
        names: 只运行指定的套件，默认全部

    Returns:
        每个套件的通过/失败计数
    """
    names = names or list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise UsageError(f"未知的套件: {', '.join(unknown)}，可选: {', '.join(SUITES)}")
    summary = VerifySummary(seed=seed)
    for name in names:
        rec = _Recorder(name)
        with rec.guard(name):
            SUITES[name](rec, random.Random(f"{seed}-{name}"))
        logger.info(f"套件 {name}: 通过 {rec.result.passed}，失败 {rec.result.failed}")
        summary.suites.append(rec.result)
    return summary


class VerifyAction:
    """运行正确性自检的Action"""

    def __init__(self):
        self.desc = "对照参考实现运行全部正确性套件"

    async def run(self, seed: int, names: Optional[List[str]] = None) -> VerifySummary:
        summary = verify_suite(seed, names)
        if summary.passed:
            logger.info("全部套件通过")
        else:
            for suite in summary.suites:
                for failure in suite.failures:
                    logger.error(f"[{suite.name}] {failure}")
        return summary
