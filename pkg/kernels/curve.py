"""
短 Weierstrass 曲线 y² = x³ + a4·x + b 上的点运算

支持三种坐标形式：
- Affine (x, y) 加无穷远标记
- Jacobian (X, Y, Z)，仿射像 (X/Z², Y/Z³)，Z == 0 表示无穷远点
- XYZZ (X, Y, ZZ, ZZZ)，仿射像 (X/ZZ, Y/ZZZ)，ZZ == 0 表示无穷远点

PADD/PDBL 的通用路径采用公式数据库中的 madd-2007-bl / add-2007-bl / dbl-2009-l
（Jacobian）与 madd-2008-s / add-2008-s / dbl-2008-s-1（XYZZ），
各公式的有限域运算次数与公开的运算计数表一致。
"""
import random
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from kernels.counters import current_counters, uncounted
from kernels.errors import ParameterError, RangeError, UsageError
from kernels.field import (
    FieldElement,
    FieldParams,
    batch_inverse,
    element_from_hex,
    element_to_hex,
    ff_add,
    ff_dbl,
    ff_inv,
    ff_mul,
    ff_neg,
    ff_sqr,
    ff_sub,
)
from kernels.limbs import FixedUint

INFINITY_HEX = "infinity"


class Form(str, Enum):
    AFFINE = "affine"
    JACOBIAN = "jacobian"
    XYZZ = "xyzz"


@dataclass(frozen=True, eq=False)
class CurveParams:
    """曲线参数；order 为生成元所在子群的阶"""

    name: str
    field: FieldParams
    a4: FieldElement
    b: FieldElement
    order: int
    cofactor: int
    scalar_field: Optional[FieldParams] = None
    generator: Optional["AffinePoint"] = None

    @classmethod
    def build(
        cls,
        name: str,
        field: FieldParams,
        a4: int,
        b: int,
        order: int,
        cofactor: int,
        scalar_field: Optional[FieldParams] = None,
    ) -> "CurveParams":
        p = field.modulus
        if (4 * a4 ** 3 + 27 * b ** 2) % p == 0:
            raise ParameterError(f"{name}: 判别式为零，曲线奇异")
        return cls(name, field, field.element(a4), field.element(b), order, cofactor, scalar_field)

    def with_generator(self, x: FieldElement, y: FieldElement) -> "CurveParams":
        curve = replace(self, generator=None)
        object.__setattr__(curve, "generator", AffinePoint(curve, x, y))
        return curve

    @property
    def scalar_bits(self) -> int:
        if self.scalar_field is not None:
            return self.scalar_field.modulus.bit_length()
        return self.order.bit_length()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurveParams):
            return NotImplemented
        return (
            self.name == other.name
            and self.field == other.field
            and self.a4.mont == other.a4.mont
            and self.b.mont == other.b.mont
        )

    def __hash__(self) -> int:
        return hash((self.name, self.field.modulus))

    def __repr__(self) -> str:
        return f"CurveParams({self.name})"


@dataclass(frozen=True, slots=True)
class AffinePoint:
    curve: CurveParams
    x: FieldElement
    y: FieldElement
    infinity: bool = False

    form = Form.AFFINE

    @classmethod
    def identity(cls, curve: CurveParams) -> "AffinePoint":
        zero = curve.field.zero()
        return cls(curve, zero, zero, True)

    def is_identity(self) -> bool:
        return self.infinity


@dataclass(frozen=True, slots=True)
class JacobianPoint:
    curve: CurveParams
    X: FieldElement
    Y: FieldElement
    Z: FieldElement

    form = Form.JACOBIAN

    @classmethod
    def identity(cls, curve: CurveParams) -> "JacobianPoint":
        one = curve.field.one()
        return cls(curve, one, one, curve.field.zero())

    def is_identity(self) -> bool:
        return self.Z.is_zero()

    def is_normalized(self) -> bool:
        return self.Z.is_one()


@dataclass(frozen=True, slots=True)
class XYZZPoint:
    curve: CurveParams
    X: FieldElement
    Y: FieldElement
    ZZ: FieldElement
    ZZZ: FieldElement

    form = Form.XYZZ

    @classmethod
    def identity(cls, curve: CurveParams) -> "XYZZPoint":
        one = curve.field.one()
        zero = curve.field.zero()
        return cls(curve, one, one, zero, zero)

    def is_identity(self) -> bool:
        return self.ZZ.is_zero()

    def is_normalized(self) -> bool:
        return self.ZZ.is_one() and self.ZZZ.is_one()


CurvePoint = Union[AffinePoint, JacobianPoint, XYZZPoint]

_POINT_TYPES = {
    Form.AFFINE: AffinePoint,
    Form.JACOBIAN: JacobianPoint,
    Form.XYZZ: XYZZPoint,
}


def identity(curve: CurveParams, form: Form = Form.AFFINE) -> CurvePoint:
    return _POINT_TYPES[Form(form)].identity(curve)


def affine(curve: CurveParams, x: int, y: int) -> AffinePoint:
    """由普通整数坐标构造仿射点（不校验）"""
    return AffinePoint(curve, curve.field.element(x), curve.field.element(y))


def _tick(kernel: str) -> None:
    counters = current_counters()
    if counters is not None:
        setattr(counters, kernel, getattr(counters, kernel) + 1)


def _check_pair(p: CurvePoint, q: CurvePoint) -> None:
    if type(p) is not type(q):
        raise UsageError(f"坐标形式不一致: {p.form.value} 与 {q.form.value}")
    if p.curve is not q.curve and p.curve != q.curve:
        raise UsageError(f"曲线不一致: {p.curve.name} 与 {q.curve.name}")


# ---- Affine ----

def _padd_affine(p: AffinePoint, q: AffinePoint) -> AffinePoint:
    if p.infinity:
        return q
    if q.infinity:
        return p
    if p.x == q.x:
        if p.y == q.y:
            return pdbl(p)
        return AffinePoint.identity(p.curve)
    _tick("padd")
    num = ff_sub(q.y, p.y)
    den = ff_sub(q.x, p.x)
    lam = ff_mul(num, ff_inv(den))
    x3 = ff_sub(ff_sub(ff_mul(lam, lam), p.x), q.x)
    y3 = ff_sub(ff_mul(lam, ff_sub(p.x, x3)), p.y)
    return AffinePoint(p.curve, x3, y3)


def _pdbl_affine(p: AffinePoint) -> AffinePoint:
    if p.infinity or p.y.is_zero():
        return AffinePoint.identity(p.curve)
    _tick("pdbl")
    xx = ff_sqr(p.x)
    num = ff_add(ff_add(ff_dbl(xx), xx), p.curve.a4)
    lam = ff_mul(num, ff_inv(ff_dbl(p.y)))
    x3 = ff_sub(ff_sub(ff_sqr(lam), p.x), p.x)
    y3 = ff_sub(ff_mul(lam, ff_sub(p.x, x3)), p.y)
    return AffinePoint(p.curve, x3, y3)


# ---- Jacobian ----

def _madd_jacobian(p: JacobianPoint, q: JacobianPoint) -> JacobianPoint:
    """q 已归一化 (Z2 == 1)，madd-2007-bl"""
    z1z1 = ff_sqr(p.Z)
    u2 = ff_mul(q.X, z1z1)
    s2 = ff_mul(ff_mul(q.Y, p.Z), z1z1)
    h = ff_sub(u2, p.X)
    r_half = ff_sub(s2, p.Y)
    if h.is_zero():
        if r_half.is_zero():
            return pdbl(p)
        return JacobianPoint.identity(p.curve)
    _tick("padd")
    r = ff_dbl(r_half)
    hh = ff_sqr(h)
    i = ff_dbl(ff_dbl(hh))
    j = ff_mul(h, i)
    v = ff_mul(p.X, i)
    x3 = ff_sub(ff_sub(ff_sqr(r), j), ff_dbl(v))
    y3 = ff_sub(ff_mul(r, ff_sub(v, x3)), ff_dbl(ff_mul(p.Y, j)))
    z3 = ff_sub(ff_sub(ff_sqr(ff_add(p.Z, h)), z1z1), hh)
    return JacobianPoint(p.curve, x3, y3, z3)


def _add_jacobian(p: JacobianPoint, q: JacobianPoint) -> JacobianPoint:
    """add-2007-bl"""
    z1z1 = ff_sqr(p.Z)
    z2z2 = ff_sqr(q.Z)
    u1 = ff_mul(p.X, z2z2)
    u2 = ff_mul(q.X, z1z1)
    s1 = ff_mul(ff_mul(p.Y, q.Z), z2z2)
    s2 = ff_mul(ff_mul(q.Y, p.Z), z1z1)
    h = ff_sub(u2, u1)
    r_half = ff_sub(s2, s1)
    if h.is_zero():
        if r_half.is_zero():
            return pdbl(p)
        return JacobianPoint.identity(p.curve)
    _tick("padd")
    i = ff_sqr(ff_dbl(h))
    j = ff_mul(h, i)
    r = ff_dbl(r_half)
    v = ff_mul(u1, i)
    x3 = ff_sub(ff_sub(ff_sqr(r), j), ff_dbl(v))
    y3 = ff_sub(ff_mul(r, ff_sub(v, x3)), ff_dbl(ff_mul(s1, j)))
    z3 = ff_mul(ff_sub(ff_sub(ff_sqr(ff_add(p.Z, q.Z)), z1z1), z2z2), h)
    return JacobianPoint(p.curve, x3, y3, z3)


def _pdbl_jacobian(p: JacobianPoint) -> JacobianPoint:
    """dbl-2009-l，a4 非零时补上 a4·Z⁴ 项"""
    if p.is_identity() or p.Y.is_zero():
        return JacobianPoint.identity(p.curve)
    _tick("pdbl")
    a = ff_sqr(p.X)
    b = ff_sqr(p.Y)
    c = ff_sqr(b)
    d = ff_dbl(ff_sub(ff_sub(ff_sqr(ff_add(p.X, b)), a), c))
    e = ff_add(ff_dbl(a), a)
    if not p.curve.a4.is_zero():
        e = ff_add(e, ff_mul(p.curve.a4, ff_sqr(ff_sqr(p.Z))))
    f = ff_sqr(e)
    x3 = ff_sub(ff_sub(f, d), d)
    y3 = ff_sub(ff_mul(e, ff_sub(d, x3)), ff_dbl(ff_dbl(ff_dbl(c))))
    z3 = ff_dbl(ff_mul(p.Y, p.Z))
    return JacobianPoint(p.curve, x3, y3, z3)


# ---- XYZZ ----

def _madd_xyzz(p: XYZZPoint, q: XYZZPoint) -> XYZZPoint:
    """q 已归一化 (ZZ2 == ZZZ2 == 1)，madd-2008-s"""
    u2 = ff_mul(q.X, p.ZZ)
    s2 = ff_mul(q.Y, p.ZZZ)
    pp_ = ff_sub(u2, p.X)
    r = ff_sub(s2, p.Y)
    if pp_.is_zero():
        if r.is_zero():
            return pdbl(p)
        return XYZZPoint.identity(p.curve)
    _tick("padd")
    pp = ff_sqr(pp_)
    ppp = ff_mul(pp_, pp)
    q_ = ff_mul(p.X, pp)
    x3 = ff_sub(ff_sub(ff_sqr(r), ppp), ff_dbl(q_))
    y3 = ff_sub(ff_mul(r, ff_sub(q_, x3)), ff_mul(p.Y, ppp))
    zz3 = ff_mul(p.ZZ, pp)
    zzz3 = ff_mul(p.ZZZ, ppp)
    return XYZZPoint(p.curve, x3, y3, zz3, zzz3)


def _add_xyzz(p: XYZZPoint, q: XYZZPoint) -> XYZZPoint:
    """add-2008-s"""
    u1 = ff_mul(p.X, q.ZZ)
    u2 = ff_mul(q.X, p.ZZ)
    s1 = ff_mul(p.Y, q.ZZZ)
    s2 = ff_mul(q.Y, p.ZZZ)
    pp_ = ff_sub(u2, u1)
    r = ff_sub(s2, s1)
    if pp_.is_zero():
        if r.is_zero():
            return pdbl(p)
        return XYZZPoint.identity(p.curve)
    _tick("padd")
    pp = ff_sqr(pp_)
    ppp = ff_mul(pp_, pp)
    q_ = ff_mul(u1, pp)
    x3 = ff_sub(ff_sub(ff_sqr(r), ppp), ff_dbl(q_))
    y3 = ff_sub(ff_mul(r, ff_sub(q_, x3)), ff_mul(s1, ppp))
    zz3 = ff_mul(ff_mul(p.ZZ, q.ZZ), pp)
    zzz3 = ff_mul(ff_mul(p.ZZZ, q.ZZZ), ppp)
    return XYZZPoint(p.curve, x3, y3, zz3, zzz3)


def _pdbl_xyzz(p: XYZZPoint) -> XYZZPoint:
    """dbl-2008-s-1，a4 非零时补上 a4·ZZ² 项"""
    if p.is_identity() or p.Y.is_zero():
        return XYZZPoint.identity(p.curve)
    _tick("pdbl")
    u = ff_dbl(p.Y)
    v = ff_sqr(u)
    w = ff_mul(u, v)
    s = ff_mul(p.X, v)
    xx = ff_sqr(p.X)
    m = ff_add(ff_dbl(xx), xx)
    if not p.curve.a4.is_zero():
        m = ff_add(m, ff_mul(p.curve.a4, ff_sqr(p.ZZ)))
    x3 = ff_sub(ff_sqr(m), ff_dbl(s))
    y3 = ff_sub(ff_mul(m, ff_sub(s, x3)), ff_mul(w, p.Y))
    zz3 = ff_mul(v, p.ZZ)
    zzz3 = ff_mul(w, p.ZZZ)
    return XYZZPoint(p.curve, x3, y3, zz3, zzz3)


# ---- 公共接口 ----

def padd(p: CurvePoint, q: CurvePoint, allow_mixed: bool = True) -> CurvePoint:
    """
    同一形式的两点相加

    Args:
        p: 左操作数
        q: 右操作数
        allow_mixed: 任一操作数已归一化时使用混合加法公式

    Returns:
        与输入同形式的和
    """
    _check_pair(p, q)
    if isinstance(p, AffinePoint):
        return _padd_affine(p, q)
    if p.is_identity():
        return q
    if q.is_identity():
        return p
    if isinstance(p, JacobianPoint):
        if allow_mixed and q.is_normalized():
            return _madd_jacobian(p, q)
        if allow_mixed and p.is_normalized():
            return _madd_jacobian(q, p)
        return _add_jacobian(p, q)
    if allow_mixed and q.is_normalized():
        return _madd_xyzz(p, q)
    if allow_mixed and p.is_normalized():
        return _madd_xyzz(q, p)
    return _add_xyzz(p, q)


def pdbl(p: CurvePoint) -> CurvePoint:
    if isinstance(p, AffinePoint):
        return _pdbl_affine(p)
    if isinstance(p, JacobianPoint):
        return _pdbl_jacobian(p)
    return _pdbl_xyzz(p)


def neg(p: CurvePoint) -> CurvePoint:
    if p.is_identity():
        return p
    if isinstance(p, AffinePoint):
        return AffinePoint(p.curve, p.x, ff_neg(p.y))
    if isinstance(p, JacobianPoint):
        return JacobianPoint(p.curve, p.X, ff_neg(p.Y), p.Z)
    return XYZZPoint(p.curve, p.X, ff_neg(p.Y), p.ZZ, p.ZZZ)


def convert(p: CurvePoint, target: Union[Form, str]) -> CurvePoint:
    """坐标形式转换，保持仿射像；转成 Affine 时消耗一次 ff_inv"""
    target = Form(target)
    if p.form == target:
        return p
    curve = p.curve
    if p.is_identity():
        return identity(curve, target)
    if target == Form.AFFINE:
        if isinstance(p, JacobianPoint):
            z_inv = ff_inv(p.Z)
            z_inv2 = ff_sqr(z_inv)
            return AffinePoint(curve, ff_mul(p.X, z_inv2), ff_mul(ff_mul(p.Y, z_inv2), z_inv))
        zzz_inv = ff_inv(p.ZZZ)
        zz_inv = ff_sqr(ff_mul(p.ZZ, zzz_inv))
        return AffinePoint(curve, ff_mul(p.X, zz_inv), ff_mul(p.Y, zzz_inv))
    one = curve.field.one()
    if isinstance(p, AffinePoint):
        if target == Form.JACOBIAN:
            return JacobianPoint(curve, p.x, p.y, one)
        return XYZZPoint(curve, p.x, p.y, one, one)
    if isinstance(p, JacobianPoint):
        zz = ff_sqr(p.Z)
        return XYZZPoint(curve, p.X, p.Y, zz, ff_mul(zz, p.Z))
    # XYZZ -> Jacobian: Z = ZZZ, X = X·ZZ², Y = Y·ZZZ²
    return JacobianPoint(curve, ff_mul(p.X, ff_sqr(p.ZZ)), ff_mul(p.Y, ff_sqr(p.ZZZ)), p.ZZZ)


def batch_to_affine(points: Sequence[CurvePoint]) -> List[AffinePoint]:
    """批量归一化，所有非无穷远点共享一次 ff_inv"""
    pending = [i for i, pt in enumerate(points) if not isinstance(pt, AffinePoint) and not pt.is_identity()]
    out: List[Optional[AffinePoint]] = [None] * len(points)
    for i, pt in enumerate(points):
        if isinstance(pt, AffinePoint):
            out[i] = pt
        elif pt.is_identity():
            out[i] = AffinePoint.identity(pt.curve)
    if pending:
        dens = [points[i].Z if isinstance(points[i], JacobianPoint) else points[i].ZZZ for i in pending]
        for i, inv in zip(pending, batch_inverse(dens)):
            pt = points[i]
            if isinstance(pt, JacobianPoint):
                inv2 = ff_sqr(inv)
                out[i] = AffinePoint(pt.curve, ff_mul(pt.X, inv2), ff_mul(ff_mul(pt.Y, inv2), inv))
            else:
                zz_inv = ff_sqr(ff_mul(pt.ZZ, inv))
                out[i] = AffinePoint(pt.curve, ff_mul(pt.X, zz_inv), ff_mul(pt.Y, inv))
    return out


def batch_padd_affine(lhs: Sequence[AffinePoint], rhs: Sequence[AffinePoint]) -> List[AffinePoint]:
    """N 组独立的仿射加法共享一次批量求逆"""
    if len(lhs) != len(rhs):
        raise UsageError("批量仿射加法的两侧长度不一致")
    generic = []
    out: List[Optional[AffinePoint]] = [None] * len(lhs)
    for i, (p, q) in enumerate(zip(lhs, rhs)):
        _check_pair(p, q)
        if p.infinity or q.infinity or p.x == q.x:
            out[i] = padd(p, q)
        else:
            generic.append(i)
    if generic:
        invs = batch_inverse([ff_sub(rhs[i].x, lhs[i].x) for i in generic])
        for i, inv in zip(generic, invs):
            p, q = lhs[i], rhs[i]
            _tick("padd")
            lam = ff_mul(ff_sub(q.y, p.y), inv)
            x3 = ff_sub(ff_sub(ff_mul(lam, lam), p.x), q.x)
            y3 = ff_sub(ff_mul(lam, ff_sub(p.x, x3)), p.y)
            out[i] = AffinePoint(p.curve, x3, y3)
    return out


def _scalar_int(k: Union[int, FixedUint]) -> int:
    value = k.to_int() if isinstance(k, FixedUint) else k
    if value < 0:
        raise RangeError("标量必须非负")
    return value


def scalar_mul(p: CurvePoint, k: Union[int, FixedUint]) -> CurvePoint:
    """从高位到低位的倍点-加法；仿射输入在 Jacobian 中计算后转回"""
    value = _scalar_int(k)
    if isinstance(p, AffinePoint):
        return convert(scalar_mul(convert(p, Form.JACOBIAN), value), Form.AFFINE)
    acc = identity(p.curve, p.form)
    if value == 0 or p.is_identity():
        return acc
    for i in range(value.bit_length() - 1, -1, -1):
        acc = pdbl(acc)
        if (value >> i) & 1:
            acc = padd(acc, p)
    return acc


def fixed_base_mul_many(base: AffinePoint, scalars: Sequence[int]) -> List[AffinePoint]:
    """同一基点的多个倍数：预先计算 2^i·G 的仿射表，再用混合加法累加"""
    if not scalars:
        return []
    top = max(_scalar_int(k) for k in scalars).bit_length()
    table = []
    acc = convert(base, Form.JACOBIAN)
    for _ in range(max(top, 1)):
        table.append(acc)
        acc = pdbl(acc)
    table = [convert(pt, Form.JACOBIAN) for pt in batch_to_affine(table)]
    results = []
    for k in map(_scalar_int, scalars):
        acc = JacobianPoint.identity(base.curve)
        for i in range(k.bit_length()):
            if (k >> i) & 1:
                acc = padd(acc, table[i])
        results.append(acc)
    return batch_to_affine(results)


def is_on_curve(p: CurvePoint) -> bool:
    """检查点的类型不变式（不计数）"""
    if p.is_identity():
        return True
    curve = p.curve
    with uncounted():
        if isinstance(p, AffinePoint):
            rhs = ff_add(ff_mul(ff_add(ff_sqr(p.x), curve.a4), p.x), curve.b)
            return ff_sqr(p.y) == rhs
        if isinstance(p, JacobianPoint):
            z2 = ff_sqr(p.Z)
            z4 = ff_sqr(z2)
            z6 = ff_mul(z4, z2)
            rhs = ff_add(ff_add(ff_mul(ff_sqr(p.X), p.X), ff_mul(ff_mul(curve.a4, p.X), z4)), ff_mul(curve.b, z6))
            return ff_sqr(p.Y) == rhs
        zz2 = ff_sqr(p.ZZ)
        zz3 = ff_mul(zz2, p.ZZ)
        if zz3 != ff_sqr(p.ZZZ):
            return False
        rhs = ff_add(ff_add(ff_mul(ff_sqr(p.X), p.X), ff_mul(ff_mul(curve.a4, p.X), zz2)), ff_mul(curve.b, zz3))
        return ff_sqr(p.Y) == rhs


def affine_coords(p: CurvePoint) -> Optional[Tuple[int, int]]:
    """仿射像的规范整数坐标，无穷远点返回 None（不计数）"""
    if p.is_identity():
        return None
    with uncounted():
        a = convert(p, Form.AFFINE)
    return a.x.value, a.y.value


def points_equal(p: CurvePoint, q: CurvePoint) -> bool:
    """群元素相等（可跨坐标形式比较）"""
    if p.curve != q.curve:
        return False
    return affine_coords(p) == affine_coords(q)


def point_to_hex(p: CurvePoint) -> str:
    """未压缩仿射十六进制 x‖y，无穷远点为 infinity"""
    coords = affine_coords(p)
    if coords is None:
        return INFINITY_HEX
    field = p.curve.field
    return element_to_hex(field.element(coords[0])) + element_to_hex(field.element(coords[1]))


def point_from_hex(curve: CurveParams, text: str) -> AffinePoint:
    text = text.strip().lower()
    if text == INFINITY_HEX:
        return AffinePoint.identity(curve)
    width = curve.field.limb_count * curve.field.word_bits // 4
    if len(text) != 2 * width:
        raise RangeError(f"点的十六进制宽度应为 {2 * width} 位")
    pt = AffinePoint(curve, element_from_hex(curve.field, text[:width]), element_from_hex(curve.field, text[width:]))
    if not is_on_curve(pt):
        raise UsageError(f"点不在曲线 {curve.name} 上: {text}")
    return pt


def sample_points(curve: CurveParams, n: int, rng: random.Random) -> List[AffinePoint]:
    """确定性采样 start + i·step（n 小于群阶时互不相同），不计数"""
    if curve.generator is None:
        raise UsageError(f"曲线 {curve.name} 没有生成元")
    with uncounted():
        g = curve.generator
        start = scalar_mul(convert(g, Form.JACOBIAN), rng.randrange(1, curve.order))
        step = convert(scalar_mul(g, rng.randrange(1, curve.order)), Form.JACOBIAN)
        out = []
        acc = start
        for _ in range(n):
            out.append(acc)
            acc = padd(acc, step)
        return batch_to_affine(out)


def enumerate_points(curve: CurveParams) -> List[Tuple[int, int]]:
    """小域上用整数运算穷举全部仿射点（不含无穷远点）"""
    p = curve.field.modulus
    if p >= 1 << 16:
        raise UsageError(f"{curve.name} 的基域过大，无法穷举")
    a4 = curve.a4.value
    b = curve.b.value
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    points = []
    for x in range(p):
        for y in roots.get((x ** 3 + a4 * x + b) % p, []):
            points.append((x, y))
    return points
