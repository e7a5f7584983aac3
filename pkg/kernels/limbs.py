"""
定宽多精度无符号整数（字长limb表示）

数值 = Σ limbs[i]·2^(W·i)，limb 按小端顺序存放；所有运算逐limb显式传播进位/借位，
并把limb级运算次数计入当前计数上下文。
"""
from dataclasses import dataclass
from enum import IntEnum
from typing import Tuple

from kernels.counters import current_counters
from kernels.errors import RangeError, UsageError

SUPPORTED_WORD_BITS = (32, 64)
DEFAULT_WORD_BITS = 32


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def limbs_for_bits(bits: int, word_bits: int = DEFAULT_WORD_BITS) -> int:
    """B位整数需要的limb数 ceil(B / W)"""
    if bits <= 0:
        raise UsageError(f"位数必须为正: {bits}")
    return -(-bits // word_bits)


@dataclass(frozen=True)
class FixedUint:
    """定宽无符号整数"""

    limbs: Tuple[int, ...]
    word_bits: int = DEFAULT_WORD_BITS

    def __post_init__(self):
        if self.word_bits not in SUPPORTED_WORD_BITS:
            raise UsageError(f"不支持的字长: {self.word_bits}")
        if not self.limbs:
            raise UsageError("limb数量必须为正")
        bound = 1 << self.word_bits
        for limb in self.limbs:
            if not 0 <= limb < bound:
                raise RangeError(f"limb超出字长范围: {limb:#x}")

    @property
    def limb_count(self) -> int:
        return len(self.limbs)

    @property
    def bit_width(self) -> int:
        return self.word_bits * len(self.limbs)

    @classmethod
    def zero(cls, limb_count: int, word_bits: int = DEFAULT_WORD_BITS) -> "FixedUint":
        return cls((0,) * limb_count, word_bits)

    @classmethod
    def from_int(cls, value: int, limb_count: int, word_bits: int = DEFAULT_WORD_BITS) -> "FixedUint":
        if value < 0 or value >> (word_bits * limb_count):
            raise RangeError(f"数值无法放入 {limb_count} 个 {word_bits} 位limb")
        mask = (1 << word_bits) - 1
        return cls(tuple((value >> (word_bits * i)) & mask for i in range(limb_count)), word_bits)

    def to_int(self) -> int:
        value = 0
        for limb in reversed(self.limbs):
            value = (value << self.word_bits) | limb
        return value

    def __int__(self) -> int:
        return self.to_int()

    @classmethod
    def from_hex(cls, text: str, limb_count: int, word_bits: int = DEFAULT_WORD_BITS) -> "FixedUint":
        """
        解析大端十六进制文本，宽度必须恰好为 L·W/4 个十六进制位

        Args:
            text: 十六进制文本，可带 0x 前缀
            limb_count: limb数量
            word_bits: 字长

        Returns:
            定宽整数
        """
        digits = text.strip().lower()
        if digits.startswith("0x"):
            digits = digits[2:]
        width = limb_count * word_bits // 4
        if len(digits) != width:
            raise RangeError(f"十六进制宽度应为 {width} 位，实际为 {len(digits)} 位")
        try:
            value = int(digits, 16)
        except ValueError as e:
            raise UsageError(f"非法的十六进制文本: {text!r}") from e
        return cls.from_int(value, limb_count, word_bits)

    def to_hex(self) -> str:
        """定宽大端十六进制（不带前缀）"""
        return format(self.to_int(), f"0{self.bit_width // 4}x")

    def is_zero(self) -> bool:
        return not any(self.limbs)

    def is_even(self) -> bool:
        return not self.limbs[0] & 1


def _check_shape(a: FixedUint, b: FixedUint) -> None:
    if a.limb_count != b.limb_count or a.word_bits != b.word_bits:
        raise UsageError(
            f"limb形状不一致: {a.limb_count}x{a.word_bits} 与 {b.limb_count}x{b.word_bits}"
        )


def add_with_carry(a: FixedUint, b: FixedUint, carry_in: int = 0) -> Tuple[FixedUint, int]:
    """逐limb加法，返回 (和 mod 2^(W·L), 进位)"""
    _check_shape(a, b)
    w = a.word_bits
    mask = (1 << w) - 1
    carry = carry_in
    out = []
    for x, y in zip(a.limbs, b.limbs):
        s = x + y + carry
        out.append(s & mask)
        carry = s >> w
    counters = current_counters()
    if counters is not None:
        counters.limb_add += a.limb_count
    return FixedUint(tuple(out), w), carry


def sub_with_borrow(a: FixedUint, b: FixedUint) -> Tuple[FixedUint, int]:
    """逐limb减法，返回 (差 mod 2^(W·L), 借位)；a < b 时借位为1"""
    _check_shape(a, b)
    w = a.word_bits
    base = 1 << w
    borrow = 0
    out = []
    for x, y in zip(a.limbs, b.limbs):
        d = x - y - borrow
        if d < 0:
            d += base
            borrow = 1
        else:
            borrow = 0
        out.append(d)
    counters = current_counters()
    if counters is not None:
        counters.limb_sub += a.limb_count
    return FixedUint(tuple(out), w), borrow


def shl1(a: FixedUint) -> Tuple[FixedUint, int]:
    """左移一位，返回 (2a mod 2^(W·L), 移出的最高位)"""
    w = a.word_bits
    mask = (1 << w) - 1
    carry = 0
    out = []
    for x in a.limbs:
        out.append(((x << 1) & mask) | carry)
        carry = x >> (w - 1)
    counters = current_counters()
    if counters is not None:
        counters.limb_shift += a.limb_count
    return FixedUint(tuple(out), w), carry


def shr1(a: FixedUint, msb_in: int = 0) -> Tuple[FixedUint, int]:
    """右移一位，msb_in 填入最高位，返回 (结果, 移出的最低位)"""
    w = a.word_bits
    carry = msb_in
    out = [0] * a.limb_count
    for i in range(a.limb_count - 1, -1, -1):
        x = a.limbs[i]
        out[i] = (x >> 1) | (carry << (w - 1))
        carry = x & 1
    counters = current_counters()
    if counters is not None:
        counters.limb_shift += a.limb_count
    return FixedUint(tuple(out), w), carry


def cmp(a: FixedUint, b: FixedUint) -> Ordering:
    """从最高limb开始的字典序比较，按实际检查的limb数计数"""
    _check_shape(a, b)
    examined = 0
    result = Ordering.EQ
    for x, y in zip(reversed(a.limbs), reversed(b.limbs)):
        examined += 1
        if x != y:
            result = Ordering.GT if x > y else Ordering.LT
            break
    counters = current_counters()
    if counters is not None:
        counters.limb_cmp += examined
    return result


def cmp_examined(x: int, y: int, limb_count: int, word_bits: int) -> int:
    """cmp 在整数 x、y 上会检查的limb数（供整数后端精确记账）"""
    diff = x ^ y
    if not diff:
        return limb_count
    return limb_count - (diff.bit_length() - 1) // word_bits


def mul_wide_limb(a: int, b: int, c: int, d: int, word_bits: int = DEFAULT_WORD_BITS) -> Tuple[int, int]:
    """单字乘加 a·b + c + d，返回 (高字, 低字)；结果不会超过 2W 位"""
    t = a * b + c + d
    counters = current_counters()
    if counters is not None:
        counters.limb_muladd += 1
    return t >> word_bits, t & ((1 << word_bits) - 1)


def add_word(a: int, b: int, word_bits: int = DEFAULT_WORD_BITS) -> Tuple[int, int]:
    """单字加法，返回 (低字, 进位)"""
    s = a + b
    counters = current_counters()
    if counters is not None:
        counters.limb_add += 1
    return s & ((1 << word_bits) - 1), s >> word_bits
