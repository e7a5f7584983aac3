"""
预置的域与曲线

BLS12 族参数由种子 x 推导：r = x⁴ − x² + 1，q = (x − 1)²·r / 3 + x，
G1 余因子 h = (x − 1)² / 3。生成元取 h·P，P 为按 x 递增找到的第一个曲线点。
所有常数在构建时校验，不直接信任。
"""
from functools import lru_cache
from typing import Dict, Tuple

from kernels.counters import uncounted
from kernels.curve import AffinePoint, CurveParams, Form, affine, convert, enumerate_points, is_on_curve, scalar_mul
from kernels.errors import ParameterError, UsageError
from kernels.field import NATIVE, FieldParams, ff_add, ff_mul, ff_sqr, ff_sqrt
from kernels.limbs import DEFAULT_WORD_BITS
from utils.logs import logger

# 曲线名 -> (种子 x, 系数 b)
BLS12_SEEDS: Dict[str, Tuple[int, int]] = {
    "bls12-377": (0x8508C00000000001, 1),
    "bls12-381": (-0xD201000000010000, 4),
}

TOY_MODULUS = 17
TOY_A4 = 2
TOY_B = 2

FIELD_PRESETS = ("bls12-377-fr", "bls12-377-fq", "bls12-381-fr", "bls12-381-fq", "f17")
CURVE_PRESETS = ("bls12-377-g1", "bls12-381-g1", "toy")


def bls12_moduli(seed: int) -> Tuple[int, int, int]:
    """
    由种子计算 BLS12 的 (q, r, h)

    Args:
        seed: 曲线种子 x

    Returns:
        基域模数 q、标量域模数 r、G1 余因子 h
    """
    r = seed ** 4 - seed ** 2 + 1
    q_num = (seed - 1) ** 2 * r
    h_num = (seed - 1) ** 2
    if q_num % 3 or h_num % 3:
        raise ParameterError(f"种子 {seed:#x} 不是合法的 BLS12 种子")
    return q_num // 3 + seed, r, h_num // 3


def _field_modulus(name: str) -> int:
    if name == "f17":
        return TOY_MODULUS
    family, _, kind = name.rpartition("-")
    if family not in BLS12_SEEDS or kind not in ("fr", "fq"):
        raise UsageError(f"未知的域预置: {name}，可选: {', '.join(FIELD_PRESETS)}")
    q, r, _ = bls12_moduli(BLS12_SEEDS[family][0])
    return q if kind == "fq" else r


@lru_cache(maxsize=None)
def get_field(name: str, word_bits: int = DEFAULT_WORD_BITS, backend: str = NATIVE) -> FieldParams:
    """按名称获取域参数（带缓存）"""
    params = FieldParams.build(name, _field_modulus(name), word_bits=word_bits, backend=backend)
    logger.debug(f"域参数已构建: {params}")
    return params


@lru_cache(maxsize=None)
def get_curve(name: str, word_bits: int = DEFAULT_WORD_BITS, backend: str = NATIVE) -> CurveParams:
    """按名称获取曲线参数（带缓存），生成元在此计算并校验"""
    if name == "toy":
        curve = _build_toy(word_bits, backend)
    elif name.endswith("-g1") and name[:-3] in BLS12_SEEDS:
        curve = _build_bls12(name[:-3], word_bits, backend)
    else:
        raise UsageError(f"未知的曲线预置: {name}，可选: {', '.join(CURVE_PRESETS)}")
    _validate_generator(curve)
    logger.debug(f"曲线参数已构建: {curve.name}, 子群阶 {curve.order.bit_length()} 位")
    return curve


def _build_toy(word_bits: int, backend: str) -> CurveParams:
    field = get_field("f17", word_bits, backend)
    curve = CurveParams.build("toy", field, TOY_A4, TOY_B, order=0, cofactor=1)
    points = enumerate_points(curve)
    order = len(points) + 1
    curve = CurveParams.build("toy", field, TOY_A4, TOY_B, order=order, cofactor=1)
    x, y = points[0]
    return curve.with_generator(field.element(x), field.element(y))


def _build_bls12(family: str, word_bits: int, backend: str) -> CurveParams:
    seed, b = BLS12_SEEDS[family]
    base = get_field(f"{family}-fq", word_bits, backend)
    scalar = get_field(f"{family}-fr", word_bits, backend)
    _, r, h = bls12_moduli(seed)
    curve = CurveParams.build(f"{family}-g1", base, 0, b, order=r, cofactor=h, scalar_field=scalar)
    with uncounted():
        x = 1
        while True:
            fx = base.element(x)
            y = ff_sqrt(ff_add(ff_mul(ff_sqr(fx), fx), curve.b))
            if y is not None:
                g = scalar_mul(convert(affine(curve, x, y.value), Form.JACOBIAN), h)
                if not g.is_identity():
                    g = convert(g, Form.AFFINE)
                    return curve.with_generator(g.x, g.y)
            x += 1


def _validate_generator(curve: CurveParams) -> None:
    g: AffinePoint = curve.generator
    if g is None or g.is_identity():
        raise ParameterError(f"{curve.name}: 缺少非无穷远生成元")
    if not is_on_curve(g):
        raise ParameterError(f"{curve.name}: 生成元不在曲线上")
    with uncounted():
        if not scalar_mul(convert(g, Form.JACOBIAN), curve.order).is_identity():
            raise ParameterError(f"{curve.name}: 生成元的阶不整除子群阶")
