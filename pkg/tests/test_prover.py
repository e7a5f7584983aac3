import pytest

from kernels.counters import counting
from kernels.curve import padd
from kernels.errors import UnsatisfiedInstanceError, UsageError
from kernels.field import ff_add
from kernels.ntt import build_domain, compute_h
from kernels.prover import ProverInputs, check_with_trapdoor, mock_setup, prove, random_inputs


def _run(bls377, rng, n, m, seed=1):
    pk, trapdoor = mock_setup(n, m, seed, bls377)
    domain = build_domain(n, bls377.scalar_field)
    inputs = random_inputs(domain, m, rng)
    return pk, trapdoor, inputs, prove(pk, inputs, domain=domain)


def test_mock_setup_shapes(bls377):
    pk, trapdoor = mock_setup(8, 5, 3, bls377)
    assert pk.domain_size == 8
    assert len(pk.witness_points) == 5
    assert len(pk.h_points) == 7
    assert "secrets" in repr(trapdoor)
    again, _ = mock_setup(8, 5, 3, bls377)
    assert again.witness_points == pk.witness_points


def test_mock_setup_validation(bls377, toy):
    with pytest.raises(UsageError):
        mock_setup(6, 2, 0, bls377)
    with pytest.raises(UsageError):
        mock_setup(1, 2, 0, bls377)
    with pytest.raises(UsageError):
        mock_setup(8, 0, 0, bls377)
    with pytest.raises(UsageError):
        mock_setup(8, 2, 0, toy)


def test_inputs_validate(fr377):
    one = fr377.one()
    with pytest.raises(UsageError):
        ProverInputs([one] * 4, [one] * 4, [one] * 3, [one]).validate()
    with pytest.raises(UsageError):
        ProverInputs([one] * 4, [one] * 4, [one] * 4, [one], num_public=2).validate()
    ProverInputs([one] * 4, [one] * 4, [one] * 4, [one], num_public=1).validate()


def test_honest_proof_is_accepted(bls377, rng):
    _, trapdoor, inputs, proof = _run(bls377, rng, 8, 4)
    assert check_with_trapdoor(proof, trapdoor, inputs)
    transcript = proof.transcript
    assert transcript.transform_count == 7
    assert set(transcript.kernel_seconds) == {"ntt", "msm"}
    assert transcript.counters("msm").padd > 0
    assert transcript.counters("ntt").butterfly > 0
    assert transcript.counters("msm").butterfly == 0

    assert transcript.counters("glue").ff_total() * 100 <= transcript.counters("total").ff_total()

def test_tampered_proof_is_rejected(bls377, rng):
    _, trapdoor, inputs, proof = _run(bls377, rng, 8, 4)
    g = bls377.generator
    bad_a = type(proof)(padd(proof.A, g), proof.C, proof.transcript)
    bad_c = type(proof)(proof.A, padd(proof.C, g), proof.transcript)
    assert not check_with_trapdoor(bad_a, trapdoor, inputs)
    assert not check_with_trapdoor(bad_c, trapdoor, inputs)


def test_size_mismatch_between_key_and_inputs(bls377, rng):
    pk, _ = mock_setup(8, 4, 1, bls377)
    inputs = random_inputs(build_domain(16, bls377.scalar_field), 4, rng)
    with pytest.raises(UsageError):
        prove(pk, inputs)
    inputs = random_inputs(build_domain(8, bls377.scalar_field), 3, rng)
    with pytest.raises(UsageError):
        prove(pk, inputs)


def test_unsatisfied_instance_is_reported(bls377, rng):
    pk, _ = mock_setup(8, 2, 1, bls377)
    inputs = random_inputs(build_domain(8, bls377.scalar_field), 2, rng)
    inputs.c[0] = ff_add(inputs.c[0], bls377.scalar_field.one())
    with pytest.raises(UnsatisfiedInstanceError):
        prove(pk, inputs)


@pytest.mark.slow
def test_many_proofs_at_n64(bls377, rng):
    n, m = 1 << 6, 8
    pk, trapdoor = mock_setup(n, m, 11, bls377)
    domain = build_domain(n, bls377.scalar_field)
    g = bls377.generator
    for _ in range(100):
        inputs = random_inputs(domain, m, rng)
        proof = prove(pk, inputs, domain=domain)
        assert proof.transcript.transform_count == 7
        assert check_with_trapdoor(proof, trapdoor, inputs)
        tampered = type(proof)(proof.A, padd(proof.C, g), proof.transcript)
        assert not check_with_trapdoor(tampered, trapdoor, inputs)


def _flip_bit(inputs, index, bit):
    z = list(inputs.z)
    field = z[index].params
    z[index] = field.element((z[index].value ^ (1 << bit)) % field.modulus)
    return ProverInputs(inputs.a, inputs.b, inputs.c, z, inputs.num_public)


def test_single_bit_witness_flips_are_rejected(bls377, rng):
    _, trapdoor, inputs, proof = _run(bls377, rng, 8, 4)
    for _ in range(10):
        flipped = _flip_bit(inputs, rng.randrange(len(inputs.z)), rng.randrange(bls377.scalar_bits - 1))
        assert not check_with_trapdoor(proof, trapdoor, flipped)


@pytest.mark.slow
def test_hundred_bit_flips_at_n64(bls377, rng):
    _, trapdoor, inputs, proof = _run(bls377, rng, 1 << 6, 8)
    assert check_with_trapdoor(proof, trapdoor, inputs)
    for _ in range(100):
        flipped = _flip_bit(inputs, rng.randrange(len(inputs.z)), rng.randrange(bls377.scalar_bits - 1))
        assert not check_with_trapdoor(proof, trapdoor, flipped)


def test_phase_counters_match_standalone_runs(bls377, rng):
    _, _, inputs, proof = _run(bls377, rng, 8, 4)
    domain = build_domain(8, bls377.scalar_field)
    with counting() as standalone:
        compute_h(inputs.a, inputs.b, inputs.c, domain)
    transcript = proof.transcript
    assert transcript.counters("ntt") == standalone
    total = transcript.counters("total")
    assert transcript.counters("msm") + transcript.counters("ntt") + transcript.counters("glue") == total
    assert transcript.counters("glue").ff_total() * 100 <= total.ff_total()
    assert total.padd == transcript.counters("msm").padd


def test_zero_witness_gives_identity_a(bls377, rng):
    pk, trapdoor = mock_setup(8, 4, 1, bls377)
    domain = build_domain(8, bls377.scalar_field)
    inputs = random_inputs(domain, 4, rng)
    inputs.z = [bls377.scalar_field.zero()] * 4
    proof = prove(pk, inputs, domain=domain)
    assert proof.A.is_identity()
    assert check_with_trapdoor(proof, trapdoor, inputs)


def test_trapdoor_check_rejects_non_domain_sizes(bls377, rng):
    _, trapdoor, inputs, proof = _run(bls377, rng, 8, 4)
    three = ProverInputs(inputs.a[:3], inputs.b[:3], inputs.c[:3], inputs.z)
    assert not check_with_trapdoor(proof, trapdoor, three)
    ragged = ProverInputs(inputs.a, inputs.b[:4], inputs.c, inputs.z)
    assert not check_with_trapdoor(proof, trapdoor, ragged)
