"""
数论变换（NTT）

- 按时间抽取（DIT）的 Cooley-Tukey 基2变换，输入先做位反转置换，输出为自然顺序
- 分段执行：每一趟把至多 r 个阶段合并在一个 2^r 元素的 tile 内完成
- 陪集变换、多项式乘法，以及由 a、b、c 求商多项式 h 的 7 次变换流水线

逆变换在内部乘以 n^-1。
"""
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from kernels.counters import current_counters, uncounted
from kernels.errors import DomainError, UnsatisfiedInstanceError, UsageError
from kernels.field import (
    FieldElement,
    FieldParams,
    ff_add,
    ff_inv,
    ff_mul,
    ff_pow,
    ff_sub,
    random_element,
)
from utils.logs import logger

MAX_RADIX_LOG = 8
DEFAULT_CHECK_POINTS = 2


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


@dataclass(frozen=True)
class NttDomain:
    """大小为 n 的求值域，旋转因子与陪集幂次均预先计算"""

    size: int
    log_size: int
    field: FieldParams
    omega: FieldElement
    omega_inv: FieldElement
    n_inv: FieldElement
    coset: FieldElement
    coset_inv: FieldElement
    twiddles: Tuple[FieldElement, ...]
    inv_twiddles: Tuple[FieldElement, ...]
    coset_powers: Tuple[FieldElement, ...]
    coset_inv_powers: Tuple[FieldElement, ...]
    vanishing_on_coset: FieldElement
    # g^n == 1 时陪集与域重合，只允许普通变换
    vanishing_inv: Optional[FieldElement]

    def require_coset(self) -> None:
        if self.vanishing_inv is None:
            raise DomainError(f"陪集上的消失多项式取值为零 (g^{self.size} == 1)，不能做陪集变换")


def _powers(base: FieldElement, count: int) -> Tuple[FieldElement, ...]:
    out = [base.params.one()]
    for _ in range(count - 1):
        out.append(ff_mul(out[-1], base))
    return tuple(out)


def build_domain(
    n: int,
    field: FieldParams,
    omega: Optional[Union[int, FieldElement]] = None,
    coset: Optional[Union[int, FieldElement]] = None,
) -> NttDomain:
    """
    构建求值域（预计算，不计数）

    Args:
        n: 域大小，2 的幂且不超过 2^two_adicity
        field: 标量域
        omega: 可选的 n 次本原单位根，默认由 2-adic 生成元推导
        coset: 可选的陪集生成元，默认取域的乘法生成元

    Returns:
        求值域
    """
    if n < 1 or n & (n - 1):
        raise DomainError(f"NTT 大小必须是 2 的幂: {n}")
    log_n = n.bit_length() - 1
    if log_n > field.two_adicity:
        raise DomainError(f"NTT 大小 2^{log_n} 超出 {field.name} 的 2-adicity {field.two_adicity}")
    with uncounted():
        one = field.one()
        if omega is None:
            root = ff_pow(field.element(field.generator), (field.modulus - 1) >> field.two_adicity)
            w = ff_pow(root, 1 << (field.two_adicity - log_n))
        else:
            w = omega if isinstance(omega, FieldElement) else field.element(omega)
        if not ff_pow(w, n).is_one() or (n > 1 and ff_pow(w, n // 2) != field.element(-1)):
            raise DomainError(f"{w.value} 不是 {n} 次本原单位根")
        g = field.element(field.generator) if coset is None else (
            coset if isinstance(coset, FieldElement) else field.element(coset)
        )
        if g.is_zero():
            raise DomainError("陪集生成元不能为零")
        vanishing = ff_sub(ff_pow(g, n), one)
        w_inv = ff_inv(w)
        g_inv = ff_inv(g)
        return NttDomain(
            size=n,
            log_size=log_n,
            field=field,
            omega=w,
            omega_inv=w_inv,
            n_inv=ff_inv(field.element(n)),
            coset=g,
            coset_inv=g_inv,
            twiddles=_powers(w, max(n // 2, 1)),
            inv_twiddles=_powers(w_inv, max(n // 2, 1)),
            coset_powers=_powers(g, n),
            coset_inv_powers=_powers(g_inv, n),
            vanishing_on_coset=vanishing,
            vanishing_inv=None if vanishing.is_zero() else ff_inv(vanishing),
        )


def _tick(kernel: str, amount: int = 1) -> None:
    counters = current_counters()
    if counters is not None:
        setattr(counters, kernel, getattr(counters, kernel) + amount)


def _check_size(v: Sequence[FieldElement], domain: NttDomain) -> None:
    if len(v) != domain.size:
        raise UsageError(f"向量长度 {len(v)} 与域大小 {domain.size} 不一致")


def butterfly(a: FieldElement, b: FieldElement, twiddle: FieldElement) -> Tuple[FieldElement, FieldElement]:
    """a' = a + b·t，b' = a − b·t"""
    _tick("butterfly")
    bt = ff_mul(b, twiddle)
    return ff_add(a, bt), ff_sub(a, bt)


def bit_reverse_permutation(v: Sequence) -> List:
    n = len(v)
    bits = n.bit_length() - 1
    return [v[int(format(i, f"0{bits}b")[::-1], 2) if bits else 0] for i in range(n)]


def _finish(out: List[FieldElement], domain: NttDomain, direction: Direction) -> List[FieldElement]:
    if direction == Direction.INVERSE:
        return [ff_mul(x, domain.n_inv) for x in out]
    return out


def ntt_radix2(
    v: Sequence[FieldElement],
    domain: NttDomain,
    direction: Union[Direction, str] = Direction.FORWARD,
) -> List[FieldElement]:
    """基2 DIT 变换，恰好 (n/2)·log2(n) 次蝶形运算"""
    direction = Direction(direction)
    _check_size(v, domain)
    _tick("transform")
    n = domain.size
    tw = domain.twiddles if direction == Direction.FORWARD else domain.inv_twiddles
    a = bit_reverse_permutation(v)
    m = 2
    while m <= n:
        half = m // 2
        step = n // m
        for k in range(0, n, m):
            for j in range(half):
                a[k + j], a[k + j + half] = butterfly(a[k + j], a[k + j + half], tw[j * step])
        m *= 2
    return _finish(a, domain, direction)


def dft_naive(
    v: Sequence[FieldElement],
    domain: NttDomain,
    direction: Union[Direction, str] = Direction.FORWARD,
) -> List[FieldElement]:
    """O(n²) 直接求值的参考实现（整数运算，不计数）"""
    direction = Direction(direction)
    _check_size(v, domain)
    field = domain.field
    p = field.modulus
    w = (domain.omega if direction == Direction.FORWARD else domain.omega_inv).value
    values = [x.value for x in v]
    n = domain.size
    out = []
    for k in range(n):
        wk = pow(w, k, p)
        acc, power = 0, 1
        for x in values:
            acc = (acc + x * power) % p
            power = power * wk % p
        out.append(acc)
    if direction == Direction.INVERSE:
        n_inv = domain.n_inv.value
        out = [x * n_inv % p for x in out]
    return [field.element(x) for x in out]


def plan_stages(log_n: int, radix_log: int) -> List[Tuple[int, int]]:
    """分段计划：每一趟为 (起始阶段, 合并阶段数)，趟数 ceil(log_n / r)"""
    if not 1 <= radix_log <= MAX_RADIX_LOG:
        raise UsageError(f"radix_log 必须在 1..{MAX_RADIX_LOG}: {radix_log}")
    plan = []
    first = 0
    while first < log_n:
        count = min(radix_log, log_n - first)
        plan.append((first, count))
        first += count
    return plan


def ntt_staged(
    v: Sequence[FieldElement],
    domain: NttDomain,
    radix_log: int,
    direction: Union[Direction, str] = Direction.FORWARD,
) -> List[FieldElement]:
    """
    分段执行的 DIT 变换，结果与 ntt_radix2 完全一致

    每一趟把 2^count 个跨度为 2^first 的元素收集到一个 tile 中，
    在 tile 内完成 count 个阶段后写回。
    """
    direction = Direction(direction)
    _check_size(v, domain)
    plan = plan_stages(domain.log_size, radix_log)
    _tick("transform")
    n = domain.size
    tw = domain.twiddles if direction == Direction.FORWARD else domain.inv_twiddles
    a = bit_reverse_permutation(v)
    for first, count in plan:
        span = 1 << first
        tile_size = 1 << count
        block = span * tile_size
        for base in range(0, n, block):
            for offset in range(span):
                idx = [base + offset + k * span for k in range(tile_size)]
                tile = [a[i] for i in idx]
                for t in range(1, count + 1):
                    m_local = 1 << t
                    half = m_local // 2
                    twiddle_step = n >> (first + t)
                    for k0 in range(0, tile_size, m_local):
                        for j in range(half):
                            t_idx = (offset + j * span) * twiddle_step
                            tile[k0 + j], tile[k0 + j + half] = butterfly(tile[k0 + j], tile[k0 + j + half], tw[t_idx])
                for i, x in zip(idx, tile):
                    a[i] = x
    return _finish(a, domain, direction)


def coset_ntt(
    v: Sequence[FieldElement],
    domain: NttDomain,
    direction: Union[Direction, str] = Direction.FORWARD,
    shift: Optional[FieldElement] = None,
) -> List[FieldElement]:
    """陪集变换：正向先乘 g^j 再做 NTT，逆向先做 INTT 再乘 g^-j"""
    direction = Direction(direction)
    _check_size(v, domain)
    if shift is None:
        domain.require_coset()
        powers, inv_powers = domain.coset_powers, domain.coset_inv_powers
    else:
        with uncounted():
            powers = _powers(shift, domain.size)
            inv_powers = _powers(ff_inv(shift), domain.size)
    if direction == Direction.FORWARD:
        return ntt_radix2([ff_mul(x, g) for x, g in zip(v, powers)], domain, direction)
    out = ntt_radix2(v, domain, direction)
    return [ff_mul(x, g) for x, g in zip(out, inv_powers)]


def poly_mul(
    p: Sequence[FieldElement],
    q: Sequence[FieldElement],
    domain: Optional[NttDomain] = None,
) -> List[FieldElement]:
    """NTT、逐点相乘、INTT 完成的多项式乘法"""
    if not p or not q:
        raise UsageError("多项式不能为空")
    length = len(p) + len(q) - 1
    field = p[0].params
    if domain is None:
        size = 1
        while size < length:
            size *= 2
        domain = build_domain(size, field)
    if domain.size < length:
        raise UsageError(f"域大小 {domain.size} 不足以容纳 {length} 个系数")
    zero = field.zero()
    pe = ntt_radix2(list(p) + [zero] * (domain.size - len(p)), domain)
    qe = ntt_radix2(list(q) + [zero] * (domain.size - len(q)), domain)
    prod = ntt_radix2([ff_mul(x, y) for x, y in zip(pe, qe)], domain, Direction.INVERSE)
    return prod[:length]


def evaluate_poly(coeffs: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    """Horner 求值"""
    acc = x.params.zero()
    for c in reversed(coeffs):
        acc = ff_add(ff_mul(acc, x), c)
    return acc


def _sample_outside_domain(domain: NttDomain, rng: random.Random) -> FieldElement:
    field = domain.field
    while True:
        s = random_element(field, rng)
        if not ff_pow(s, domain.size).is_one():
            return s


def compute_h(
    a_evals: Sequence[FieldElement],
    b_evals: Sequence[FieldElement],
    c_evals: Sequence[FieldElement],
    domain: NttDomain,
    check_points: int = DEFAULT_CHECK_POINTS,
    rng: Optional[random.Random] = None,
) -> List[FieldElement]:
    """
    求商多项式 h，使 a(x)·b(x) − c(x) == h(x)·(x^n − 1)

    流水线共 7 次变换：3 次 INTT、3 次陪集 NTT、1 次陪集 INTT。
    结束后在 check_points 个域外随机点上做整除性检查（不计数）。

    Args:
        a_evals: a 在域上的取值
        b_evals: b 在域上的取值
        c_evals: c 在域上的取值
        domain: 求值域
        check_points: 随机检查点个数
        rng: 随机源

    Returns:
        h 的 n−1 个系数

    Raises:
        UnsatisfiedInstanceError: 实例不满足 a∘b == c
    """
    for v in (a_evals, b_evals, c_evals):
        _check_size(v, domain)
    domain.require_coset()
    logger.debug(f"compute_h: n={domain.size}")
    a_coeffs = ntt_radix2(a_evals, domain, Direction.INVERSE)
    b_coeffs = ntt_radix2(b_evals, domain, Direction.INVERSE)
    c_coeffs = ntt_radix2(c_evals, domain, Direction.INVERSE)
    a_coset = coset_ntt(a_coeffs, domain)
    b_coset = coset_ntt(b_coeffs, domain)
    c_coset = coset_ntt(c_coeffs, domain)
    h_coset = [
        ff_mul(ff_sub(ff_mul(x, y), z), domain.vanishing_inv)
        for x, y, z in zip(a_coset, b_coset, c_coset)
    ]
    h = coset_ntt(h_coset, domain, Direction.INVERSE)

    with uncounted():
        if domain.size > 1 and not h[-1].is_zero():
            raise UnsatisfiedInstanceError("商多项式次数过高，a·b − c 不能被 x^n − 1 整除")
        rng = rng or random.Random(domain.size)
        one = domain.field.one()
        for _ in range(check_points):
            s = _sample_outside_domain(domain, rng)
            lhs = ff_sub(ff_mul(evaluate_poly(a_coeffs, s), evaluate_poly(b_coeffs, s)), evaluate_poly(c_coeffs, s))
            rhs = ff_mul(evaluate_poly(h, s), ff_sub(ff_pow(s, domain.size), one))
            if lhs != rhs:
                raise UnsatisfiedInstanceError(f"整除性检查在随机点 {s.value} 处失败")
    return h[: domain.size - 1]


def random_instance(
    domain: NttDomain,
    rng: random.Random,
) -> Tuple[List[FieldElement], List[FieldElement], List[FieldElement]]:
    """随机采样 a、b，并令 c = a∘b，保证实例满足"""
    field = domain.field
    a = [random_element(field, rng) for _ in range(domain.size)]
    b = [random_element(field, rng) for _ in range(domain.size)]
    c = [field.element(x.value * y.value) for x, y in zip(a, b)]
    return a, b, c
