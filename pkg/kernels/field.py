"""
有限域 F_p 运算（Montgomery 表示）

两个后端给出相同的数值和相同的计数：
- limb: 全部运算经由 kernels.limbs 在定宽limb上执行（CIOS 乘法、进位链、二进制扩展欧几里得求逆）
- native: 在 Python 整数上执行相同算法，并按 limb 后端会产生的次数记账
"""
import random
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Union

from sympy import isprime

from kernels.counters import current_counters
from kernels.errors import NonInvertibleError, ParameterError, RangeError, UsageError
from kernels.limbs import (
    DEFAULT_WORD_BITS,
    SUPPORTED_WORD_BITS,
    FixedUint,
    Ordering,
    add_with_carry,
    add_word,
    cmp,
    cmp_examined,
    limbs_for_bits,
    mul_wide_limb,
    shl1,
    shr1,
    sub_with_borrow,
)

NATIVE = "native"
LIMB = "limb"
BACKENDS = (NATIVE, LIMB)


@dataclass(frozen=True, eq=False)
class FieldParams:
    """素域描述，构建后不可变，可在线程间共享"""

    name: str
    modulus: int
    word_bits: int
    limb_count: int
    bits: int
    r: int
    r2: int
    r3: int
    r_inv: int
    p_inv_neg: int
    p_inv_neg_full: int
    two_adicity: int
    generator: int
    element_bytes: int
    backend: str = NATIVE

    @classmethod
    def build(
        cls,
        name: str,
        modulus: int,
        word_bits: int = DEFAULT_WORD_BITS,
        backend: str = NATIVE,
        limb_count: Optional[int] = None,
    ) -> "FieldParams":
        """
        由模数计算全部 Montgomery 常数并校验

        Args:
            name: 预置名称
            modulus: 奇素数 p
            word_bits: 字长 W
            backend: native 或 limb
            limb_count: limb数量，默认 ceil(bits(p) / W)

        Returns:
            校验通过的域参数
        """
        if word_bits not in SUPPORTED_WORD_BITS:
            raise UsageError(f"不支持的字长: {word_bits}")
        if backend not in BACKENDS:
            raise UsageError(f"不支持的域运算后端: {backend}")
        if modulus < 3:
            raise ParameterError(f"{name}: 模数过小")
        if limb_count is None:
            limb_count = limbs_for_bits(modulus.bit_length(), word_bits)
        bits = word_bits * limb_count
        if modulus >= 1 << bits:
            raise ParameterError(f"{name}: 模数超出 {limb_count} 个 {word_bits} 位limb")
        if modulus % 2 == 0:
            raise ParameterError(f"{name}: 模数必须为奇数")

        r = (1 << bits) % modulus
        two_adicity = ((modulus - 1) & -(modulus - 1)).bit_length() - 1
        params = cls(
            name=name,
            modulus=modulus,
            word_bits=word_bits,
            limb_count=limb_count,
            bits=bits,
            r=r,
            r2=r * r % modulus,
            r3=r * r * r % modulus,
            r_inv=pow(r, -1, modulus),
            p_inv_neg=(-pow(modulus, -1, 1 << word_bits)) % (1 << word_bits),
            p_inv_neg_full=(-pow(modulus, -1, 1 << bits)) % (1 << bits),
            two_adicity=two_adicity,
            generator=_smallest_nonresidue(modulus),
            element_bytes=limb_count * word_bits // 8,
            backend=backend,
        )
        params.validate()
        return params

    def validate(self) -> None:
        """检查域参数不变式，失败抛出 ParameterError"""
        p = self.modulus
        word_mask = (1 << self.word_bits) - 1
        if not isprime(p):
            raise ParameterError(f"{self.name}: 模数不是素数")
        if p % 2 == 0 or p >= 1 << self.bits:
            raise ParameterError(f"{self.name}: 模数必须是小于 2^{self.bits} 的奇数")
        if (p * self.p_inv_neg) & word_mask != word_mask:
            raise ParameterError(f"{self.name}: p·p_inv_neg 不等于 -1 mod 2^W")
        s = self.two_adicity
        if (p - 1) % (1 << s) or ((p - 1) >> s) % 2 == 0:
            raise ParameterError(f"{self.name}: 2-adicity 错误")
        if pow(self.generator, (p - 1) // 2, p) != p - 1:
            raise ParameterError(f"{self.name}: 生成元不是二次非剩余")

    def with_backend(self, backend: str) -> "FieldParams":
        if backend not in BACKENDS:
            raise UsageError(f"不支持的域运算后端: {backend}")
        return replace(self, backend=backend)

    @property
    def modulus_uint(self) -> FixedUint:
        return FixedUint.from_int(self.modulus, self.limb_count, self.word_bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldParams):
            return NotImplemented
        return (self.modulus, self.word_bits, self.limb_count) == (
            other.modulus,
            other.word_bits,
            other.limb_count,
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.word_bits, self.limb_count))

    def __repr__(self) -> str:
        return f"FieldParams({self.name}, {self.modulus.bit_length()} bits, L={self.limb_count}, W={self.word_bits})"

    # 以下转换不计数，只用于参数构建、测试和序列化

    def element(self, value: int) -> "FieldElement":
        """普通整数（可为负）按模 p 转为域元素"""
        return FieldElement(self, (value % self.modulus) * self.r % self.modulus)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, self.r)


def _smallest_nonresidue(p: int) -> int:
    g = 2
    while pow(g, (p - 1) // 2, p) != p - 1:
        g += 1
        if g >= p:
            raise ParameterError(f"模数 {p} 不存在二次非剩余")
    return g


class FieldElement:
    """Montgomery 形式的域元素：mont = value·R mod p"""

    __slots__ = ("params", "mont")

    def __init__(self, params: FieldParams, mont: int):
        assert 0 <= mont < params.modulus, "Montgomery 表示越界"
        self.params = params
        self.mont = mont

    @property
    def repr(self) -> FixedUint:
        return FixedUint.from_int(self.mont, self.params.limb_count, self.params.word_bits)

    @property
    def value(self) -> int:
        """规范值（不计数）"""
        return self.mont * self.params.r_inv % self.params.modulus

    def __int__(self) -> int:
        return self.value

    def is_zero(self) -> bool:
        return self.mont == 0

    def is_one(self) -> bool:
        return self.mont == self.params.r

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.mont == other.mont and self.params == other.params
        if isinstance(other, int):
            return self.value == other % self.params.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.mont, self.params.modulus))

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.params.name})"

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return ff_add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return ff_sub(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return ff_mul(self, other)

    def __neg__(self) -> "FieldElement":
        return ff_neg(self)

    def __pow__(self, exponent: Union[int, FixedUint]) -> "FieldElement":
        return ff_pow(self, exponent)


def _same_params(a: FieldElement, b: FieldElement) -> FieldParams:
    if a.params is not b.params and a.params != b.params:
        raise UsageError(f"域参数不一致: {a.params.name} 与 {b.params.name}")
    return a.params


def _charge_ff(params: FieldParams, op: str, operands: int) -> None:
    counters = current_counters()
    if counters is not None:
        setattr(counters, op, getattr(counters, op) + 1)
        counters.bytes_touched += operands * params.element_bytes


# ---- native 后端：整数运算 + 精确limb记账 ----

def _native_reduce(params: FieldParams, s: int) -> int:
    """s < 2p 的条件减法，记账方式与 limb 后端一致"""
    L = params.limb_count
    p = params.modulus
    counters = current_counters()
    if s >> params.bits:
        if counters is not None:
            counters.limb_sub += L
        return s - p
    if counters is not None:
        counters.limb_cmp += cmp_examined(s, p, L, params.word_bits)
    if s >= p:
        if counters is not None:
            counters.limb_sub += L
        return s - p
    return s


def _native_add(params: FieldParams, x: int, y: int) -> int:
    counters = current_counters()
    if counters is not None:
        counters.limb_add += params.limb_count
    return _native_reduce(params, x + y)


def _native_sub(params: FieldParams, x: int, y: int) -> int:
    counters = current_counters()
    L = params.limb_count
    if counters is not None:
        counters.limb_sub += L
    d = x - y
    if d < 0:
        if counters is not None:
            counters.limb_add += L
        d += params.modulus
    return d


def _native_dbl(params: FieldParams, x: int) -> int:
    counters = current_counters()
    if counters is not None:
        counters.limb_shift += params.limb_count
    return _native_reduce(params, x << 1)


def _native_mont_mul(params: FieldParams, x: int, y: int) -> int:
    L = params.limb_count
    counters = current_counters()
    if counters is not None:
        counters.limb_muladd += L * (2 * L + 1)
        counters.limb_add += 3 * L
        counters.limb_sub += L
    t = x * y
    m = (t * params.p_inv_neg_full) & ((1 << params.bits) - 1)
    u = (t + m * params.modulus) >> params.bits
    if u >= params.modulus:
        u -= params.modulus
    return u


def _native_half(params: FieldParams, x: int) -> int:
    counters = current_counters()
    L = params.limb_count
    if x & 1:
        if counters is not None:
            counters.limb_add += L
        x += params.modulus
    if counters is not None:
        counters.limb_shift += L
    return x >> 1


def _native_inv_raw(params: FieldParams, x: int) -> int:
    """二进制扩展欧几里得，返回 x^-1 mod p"""
    L = params.limb_count
    W = params.word_bits
    p = params.modulus
    u, v = x, p
    x1, x2 = 1, 0
    while u != 1 and v != 1:
        while not u & 1:
            u = _native_shift_right(params, u)
            x1 = _native_half(params, x1)
        while not v & 1:
            v = _native_shift_right(params, v)
            x2 = _native_half(params, x2)
        counters = current_counters()
        if counters is not None:
            counters.limb_cmp += cmp_examined(u, v, L, W)
        if u >= v:
            u = _native_sub_plain(params, u, v)
            x1 = _native_sub(params, x1, x2)
        else:
            v = _native_sub_plain(params, v, u)
            x2 = _native_sub(params, x2, x1)
    return x1 if u == 1 else x2


def _native_shift_right(params: FieldParams, x: int) -> int:
    counters = current_counters()
    if counters is not None:
        counters.limb_shift += params.limb_count
    return x >> 1


def _native_sub_plain(params: FieldParams, x: int, y: int) -> int:
    counters = current_counters()
    if counters is not None:
        counters.limb_sub += params.limb_count
    return x - y


# ---- limb 后端 ----

def _to_uint(params: FieldParams, x: int) -> FixedUint:
    return FixedUint.from_int(x, params.limb_count, params.word_bits)


def _limb_reduce(params: FieldParams, s: FixedUint, carry: int) -> int:
    modulus = params.modulus_uint
    if carry or cmp(s, modulus) != Ordering.LT:
        s, _ = sub_with_borrow(s, modulus)
    return s.to_int()


def _limb_add(params: FieldParams, x: int, y: int) -> int:
    s, carry = add_with_carry(_to_uint(params, x), _to_uint(params, y))
    return _limb_reduce(params, s, carry)


def _limb_sub(params: FieldParams, x: int, y: int) -> int:
    d, borrow = sub_with_borrow(_to_uint(params, x), _to_uint(params, y))
    if borrow:
        d, _ = add_with_carry(d, params.modulus_uint)
    return d.to_int()


def _limb_dbl(params: FieldParams, x: int) -> int:
    s, carry = shl1(_to_uint(params, x))
    return _limb_reduce(params, s, carry)


def _limb_mont_mul(params: FieldParams, x: int, y: int) -> int:
    """CIOS Montgomery 乘法，最后一步为减法后选择，开销固定"""
    L = params.limb_count
    W = params.word_bits
    a = _to_uint(params, x).limbs
    b = _to_uint(params, y).limbs
    n = params.modulus_uint.limbs
    n0 = params.p_inv_neg
    t = [0] * (L + 2)
    for i in range(L):
        carry = 0
        for j in range(L):
            carry, t[j] = mul_wide_limb(a[j], b[i], t[j], carry, W)
        t[L], t[L + 1] = add_word(t[L], carry, W)
        _, m = mul_wide_limb(t[0], n0, 0, 0, W)
        carry, _ = mul_wide_limb(m, n[0], t[0], 0, W)
        for j in range(1, L):
            carry, t[j - 1] = mul_wide_limb(m, n[j], t[j], carry, W)
        t[L - 1], carry = add_word(t[L], carry, W)
        t[L], _ = add_word(t[L + 1], carry, W)
    low = FixedUint(tuple(t[:L]), W)
    d, borrow = sub_with_borrow(low, params.modulus_uint)
    return d.to_int() if t[L] or not borrow else low.to_int()


def _limb_half(params: FieldParams, x: FixedUint) -> FixedUint:
    if x.is_even():
        x, _ = shr1(x)
        return x
    s, carry = add_with_carry(x, params.modulus_uint)
    s, _ = shr1(s, carry)
    return s


def _limb_inv_raw(params: FieldParams, x: int) -> int:
    one = _to_uint(params, 1)
    u = _to_uint(params, x)
    v = params.modulus_uint
    x1 = one
    x2 = FixedUint.zero(params.limb_count, params.word_bits)
    while u != one and v != one:
        while u.is_even():
            u, _ = shr1(u)
            x1 = _limb_half(params, x1)
        while v.is_even():
            v, _ = shr1(v)
            x2 = _limb_half(params, x2)
        if cmp(u, v) != Ordering.LT:
            u, _ = sub_with_borrow(u, v)
            x1 = _to_uint(params, _limb_sub(params, x1.to_int(), x2.to_int()))
        else:
            v, _ = sub_with_borrow(v, u)
            x2 = _to_uint(params, _limb_sub(params, x2.to_int(), x1.to_int()))
    return (x1 if u == one else x2).to_int()


# ---- 后端分派 ----

def _mont_mul(params: FieldParams, x: int, y: int) -> int:
    if params.backend == LIMB:
        return _limb_mont_mul(params, x, y)
    return _native_mont_mul(params, x, y)


def to_mont(params: FieldParams, x: Union[int, FixedUint]) -> FieldElement:
    """规范值转 Montgomery 形式，消耗一次 ff_mul（乘以 R2）"""
    value = x.to_int() if isinstance(x, FixedUint) else x
    if not 0 <= value < params.modulus:
        raise RangeError(f"{params.name}: 数值不在 [0, p) 内")
    _charge_ff(params, "ff_mul", 3)
    return FieldElement(params, _mont_mul(params, value, params.r2))


def from_mont(e: FieldElement) -> FixedUint:
    """Montgomery 形式转回规范值，消耗一次 ff_mul（乘以 1）"""
    params = e.params
    _charge_ff(params, "ff_mul", 3)
    return _to_uint(params, _mont_mul(params, e.mont, 1))


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_params(a, b)
    _charge_ff(params, "ff_add", 3)
    if params.backend == LIMB:
        return FieldElement(params, _limb_add(params, a.mont, b.mont))
    return FieldElement(params, _native_add(params, a.mont, b.mont))


def ff_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_params(a, b)
    _charge_ff(params, "ff_sub", 3)
    if params.backend == LIMB:
        return FieldElement(params, _limb_sub(params, a.mont, b.mont))
    return FieldElement(params, _native_sub(params, a.mont, b.mont))


def ff_neg(a: FieldElement) -> FieldElement:
    """-a，按一次 ff_sub (0 - a) 计数"""
    return ff_sub(a.params.zero(), a)


def ff_dbl(a: FieldElement) -> FieldElement:
    params = a.params
    _charge_ff(params, "ff_dbl", 2)
    if params.backend == LIMB:
        return FieldElement(params, _limb_dbl(params, a.mont))
    return FieldElement(params, _native_dbl(params, a.mont))


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_params(a, b)
    _charge_ff(params, "ff_mul", 3)
    return FieldElement(params, _mont_mul(params, a.mont, b.mont))


def ff_sqr(a: FieldElement) -> FieldElement:
    params = a.params
    _charge_ff(params, "ff_sqr", 2)
    return FieldElement(params, _mont_mul(params, a.mont, a.mont))


def ff_inv(a: FieldElement) -> FieldElement:
    """
    二进制扩展欧几里得求逆

    在 Montgomery 表示 aR 上求得 (aR)^-1，再乘以 R^3 得到 a^-1·R。
    """
    params = a.params
    if a.mont == 0:
        raise NonInvertibleError(f"{params.name}: 零元素不可逆")
    _charge_ff(params, "ff_inv", 2)
    if params.backend == LIMB:
        raw = _limb_inv_raw(params, a.mont)
    else:
        raw = _native_inv_raw(params, a.mont)
    return FieldElement(params, _mont_mul(params, raw, params.r3))


def ff_pow(a: FieldElement, exponent: Union[int, FixedUint]) -> FieldElement:
    """从高位到低位的平方-乘算法；0^0 = 1"""
    e = exponent.to_int() if isinstance(exponent, FixedUint) else exponent
    if e < 0:
        raise RangeError("指数必须非负")
    if e == 0:
        return a.params.one()
    result = a
    for i in range(e.bit_length() - 2, -1, -1):
        result = ff_sqr(result)
        if (e >> i) & 1:
            result = ff_mul(result, a)
    return result


def batch_inverse(values: Sequence[FieldElement]) -> List[FieldElement]:
    """
    前缀积批量求逆：1 次 ff_inv + 3(N-1) 次 ff_mul

    Args:
        values: 非零域元素序列

    Returns:
        逐元素的逆

    Raises:
        NonInvertibleError: 存在零元素，index 为第一个零的位置
    """
    for i, v in enumerate(values):
        if v.is_zero():
            raise NonInvertibleError(f"批量求逆的第 {i} 个元素为零", index=i)
    n = len(values)
    if n == 0:
        return []
    prefix = [values[0]]
    for v in values[1:]:
        prefix.append(ff_mul(prefix[-1], v))
    inv = ff_inv(prefix[-1])
    out: List[Optional[FieldElement]] = [None] * n
    for i in range(n - 1, 0, -1):
        out[i] = ff_mul(inv, prefix[i - 1])
        inv = ff_mul(inv, values[i])
    out[0] = inv
    return out


def legendre(a: FieldElement) -> int:
    """勒让德符号：1 为非零平方，-1 为非剩余，0 为零"""
    if a.is_zero():
        return 0
    t = ff_pow(a, (a.params.modulus - 1) // 2)
    return 1 if t.is_one() else -1


def ff_sqrt(a: FieldElement) -> Optional[FieldElement]:
    """Tonelli-Shanks 平方根，非剩余返回 None"""
    params = a.params
    if a.is_zero():
        return a
    if legendre(a) != 1:
        return None
    s = params.two_adicity
    q = (params.modulus - 1) >> s
    z = ff_pow(params.element(params.generator), q)
    x = ff_pow(a, (q + 1) // 2)
    t = ff_pow(a, q)
    m = s
    while not t.is_one():
        i, t2 = 0, t
        while not t2.is_one():
            t2 = ff_sqr(t2)
            i += 1
        b = z
        for _ in range(m - i - 1):
            b = ff_sqr(b)
        x = ff_mul(x, b)
        z = ff_sqr(b)
        t = ff_mul(t, z)
        m = i
    return x


def random_element(params: FieldParams, rng: random.Random, nonzero: bool = False) -> FieldElement:
    """均匀采样（直接采样 Montgomery 表示，不计数）"""
    low = 1 if nonzero else 0
    return FieldElement(params, rng.randrange(low, params.modulus))


def element_to_hex(e: FieldElement) -> str:
    return _to_uint(e.params, e.value).to_hex()


def element_from_hex(params: FieldParams, text: str) -> FieldElement:
    value = FixedUint.from_hex(text, params.limb_count, params.word_bits).to_int()
    if value >= params.modulus:
        raise RangeError(f"{params.name}: 十六进制数值不在 [0, p) 内")
    return params.element(value)
