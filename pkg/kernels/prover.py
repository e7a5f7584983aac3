"""
Groth16 形状的证明流水线

NTT 阶段由 a、b、c 求出商多项式 h；MSM 阶段在模拟证明密钥上计算 A = Σ z_i·W_i
与 C = Σ h_j·H_j。模拟密钥的每个点都是生成元的已知倍数，倍数保存在 Trapdoor 中，
用来代替配对验证。
"""
import random
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from kernels.counters import OpCounters, counting, uncounted
from kernels.curve import AffinePoint, CurveParams, batch_to_affine, fixed_base_mul_many, points_equal, scalar_mul
from kernels.errors import DomainError, UsageError
from kernels.field import FieldElement
from kernels.msm import MsmConfig, msm
from kernels.ntt import DEFAULT_CHECK_POINTS, Direction, NttDomain, build_domain, compute_h, evaluate_poly, ntt_radix2, random_instance
from utils.logs import logger


@dataclass
class ProverInputs:
    """域上的 a、b、c 取值，见证向量 z，以及公开输入前缀长度"""

    a: List[FieldElement]
    b: List[FieldElement]
    c: List[FieldElement]
    z: List[FieldElement]
    num_public: int = 0

    def validate(self) -> None:
        n = len(self.a)
        if len(self.b) != n or len(self.c) != n:
            raise UsageError("a、b、c 的长度必须一致")
        if not 0 <= self.num_public <= len(self.z):
            raise UsageError(f"公开输入长度 {self.num_public} 超出见证长度 {len(self.z)}")


@dataclass(frozen=True)
class MockProvingKey:
    curve: CurveParams
    domain_size: int
    generator: AffinePoint
    witness_points: List[AffinePoint]
    h_points: List[AffinePoint]


@dataclass(frozen=True)
class Trapdoor:
    """生成模拟密钥用的秘密标量，只用于桌面规模的检查，不随密钥输出"""

    curve: CurveParams
    tau: int
    witness_secrets: List[int]
    h_secrets: List[int]

    def __repr__(self) -> str:
        return f"Trapdoor({self.curve.name}, {len(self.witness_secrets)}+{len(self.h_secrets)} secrets)"


class ProofTranscript(BaseModel):
    """各内核的耗时与计数"""

    kernel_seconds: Dict[str, float] = Field(default_factory=dict)
    transform_count: int = 0
    msm_counters: Dict[str, int] = Field(default_factory=dict)
    ntt_counters: Dict[str, int] = Field(default_factory=dict)
    total_counters: Dict[str, int] = Field(default_factory=dict)
    glue_counters: Dict[str, int] = Field(default_factory=dict)

    def counters(self, phase: str) -> OpCounters:
        return OpCounters(**getattr(self, f"{phase}_counters"))


@dataclass(frozen=True)
class Proof:
    A: AffinePoint
    C: AffinePoint
    transcript: ProofTranscript


def _scalar_field(curve: CurveParams):
    if curve.scalar_field is None:
        raise UsageError(f"曲线 {curve.name} 没有标量域，不能用于证明流水线")
    return curve.scalar_field


def mock_setup(n: int, m: int, seed: int, curve: CurveParams) -> Tuple[MockProvingKey, Trapdoor]:
    """
    生成模拟证明密钥

    Args:
        n: 域大小（2 的幂，至少为 2）
        m: 见证长度
        seed: 随机种子
        curve: 带标量域的曲线

    Returns:
        (证明密钥, 陷门)
    """
    if n < 2 or n & (n - 1):
        raise UsageError(f"域大小必须是不小于 2 的 2 的幂: {n}")
    if m < 1:
        raise UsageError(f"见证长度必须为正: {m}")
    r = _scalar_field(curve).modulus
    rng = random.Random(seed)
    while True:
        tau = rng.randrange(2, r)
        if pow(tau, n, r) != 1:
            break
    witness_secrets = [rng.randrange(1, r) for _ in range(m)]
    z_tau = (pow(tau, n, r) - 1) % r
    h_secrets = [pow(tau, j, r) * z_tau % r for j in range(n - 1)]
    logger.debug(f"mock_setup: n={n}, m={m}, seed={seed}, curve={curve.name}")
    with uncounted():
        points = fixed_base_mul_many(curve.generator, witness_secrets + h_secrets)
    key = MockProvingKey(curve, n, curve.generator, points[:m], points[m:])
    return key, Trapdoor(curve, tau, witness_secrets, h_secrets)


def prove(
    pk: MockProvingKey,
    inputs: ProverInputs,
    threads: int = 1,
    window_bits: Optional[int] = None,
    check_points: int = DEFAULT_CHECK_POINTS,
    domain: Optional[NttDomain] = None,
) -> Proof:
    """
    NTT 阶段求 h，MSM 阶段求 A、C；各阶段计数分别记录

    Raises:
        UsageError: 输入规模与密钥不一致
        UnsatisfiedInstanceError: 实例不满足
    """
    inputs.validate()
    n = pk.domain_size
    if len(inputs.a) != n:
        raise UsageError(f"取值向量长度 {len(inputs.a)} 与密钥的域大小 {n} 不一致")
    if len(inputs.z) != len(pk.witness_points):
        raise UsageError(f"见证长度 {len(inputs.z)} 与密钥的 {len(pk.witness_points)} 个点不一致")
    domain = domain or build_domain(n, _scalar_field(pk.curve))
    scalar_bits = pk.curve.scalar_bits

    total = OpCounters()
    ntt_counters = OpCounters()
    msm_counters = OpCounters()
    seconds = {}
    with counting(total):
        start = time.perf_counter()
        with counting(ntt_counters):
            h = compute_h(inputs.a, inputs.b, inputs.c, domain, check_points=check_points)
        seconds["ntt"] = time.perf_counter() - start

        start = time.perf_counter()
        with counting(msm_counters):
            cfg_a = MsmConfig.for_inputs(len(pk.witness_points), scalar_bits, window_bits, threads=threads)
            cfg_c = MsmConfig.for_inputs(len(pk.h_points), scalar_bits, window_bits, threads=threads)
            a_point = msm(pk.witness_points, [x.value for x in inputs.z], cfg_a)
            c_point = msm(pk.h_points, [x.value for x in h], cfg_c)
            a_affine, c_affine = batch_to_affine([a_point, c_point])
        seconds["msm"] = time.perf_counter() - start

    transcript = ProofTranscript(
        kernel_seconds=seconds,
        transform_count=ntt_counters.transform,
        msm_counters=msm_counters.as_dict(),
        ntt_counters=ntt_counters.as_dict(),
        total_counters=total.as_dict(),
        glue_counters=(total - ntt_counters - msm_counters).as_dict(),
    )
    logger.debug(f"prove: n={n}, 变换次数={transcript.transform_count}, 耗时={seconds}")
    return Proof(a_affine, c_affine, transcript)


def _poly_at(evals: Sequence[FieldElement], domain: NttDomain, x: FieldElement) -> int:
    return evaluate_poly(ntt_radix2(evals, domain, Direction.INVERSE), x).value


def check_with_trapdoor(proof: Proof, trapdoor: Trapdoor, inputs: ProverInputs) -> bool:
    """
    用陷门代替配对检查证明

    A 应等于 (Σ s_i·z_i)·G；C 应等于 (a(τ)·b(τ) − c(τ))·G，
    后者等价于 Σ h_j·τ^j·Z(τ)·G。
    """
    curve = trapdoor.curve
    field = _scalar_field(curve)
    r = field.modulus
    if len(inputs.z) != len(trapdoor.witness_secrets):
        return False
    n = len(inputs.a)
    if len(inputs.b) != n or len(inputs.c) != n:
        return False
    with uncounted():
        a_scalar = sum(s * z.value for s, z in zip(trapdoor.witness_secrets, inputs.z)) % r
        try:
            domain = build_domain(n, field)
        except DomainError as e:
            logger.warning(f"输入长度 {n} 不能构成求值域，拒绝证明: {str(e)}")
            return False
        tau = field.element(trapdoor.tau)
        c_scalar = (
            _poly_at(inputs.a, domain, tau) * _poly_at(inputs.b, domain, tau) - _poly_at(inputs.c, domain, tau)
        ) % r
        g = curve.generator
        expected_a = scalar_mul(g, a_scalar)
        expected_c = scalar_mul(g, c_scalar)
        return points_equal(proof.A, expected_a) and points_equal(proof.C, expected_c)


def random_inputs(domain: NttDomain, m: int, rng: random.Random, num_public: int = 0) -> ProverInputs:
    """随机的满足实例和随机见证"""
    a, b, c = random_instance(domain, rng)
    field = domain.field
    z = [field.element(rng.randrange(field.modulus)) for _ in range(m)]
    return ProverInputs(a, b, c, z, num_public)
