from dataclasses import replace

import pytest

from ringcert import (
    ColumnPartition, GenerationError, IndexedMatrix, InstanceSpec, Ring, UnsupportedRingError, ZZ,
    certify, generate, hypothesis_holds, t_max_bruteforce, verify_certificate,
)
from ringcert.formats import Instance, dump_instance
from ringcert.oracle import Lcg64, general_linear_group

GF2 = Ring.gf(2)
GF3 = Ring.gf(3)


def test_verify_accepts_engine_outputs(all_ones_gf2, unit_zero_gf2):
    single = (IndexedMatrix.from_rows(ZZ, [[2, 2]]), ColumnPartition([[1], [2]]))
    for A, part in (all_ones_gf2, unit_zero_gf2, single):
        assert verify_certificate(A, part, certify(A, part)).ok


def test_verify_rejects_tampering(all_ones_gf2):
    A, part = all_ones_gf2
    cert = certify(A, part)
    singular = IndexedMatrix.from_rows(GF2, [[1, 1], [1, 1]])
    res = verify_certificate(A, part, replace(cert, Q=singular))
    assert not res and res.diagnostic == "Q not invertible"
    res = verify_certificate(A, part, replace(cert, a_prime=(), m=0))
    assert res.diagnostic == "A′ empty"
    res = verify_certificate(A, part, replace(cert, m=2))
    assert res.diagnostic.startswith("m mismatch")
    identity = IndexedMatrix.identity(GF2, [1, 2])
    res = verify_certificate(A, part, replace(cert, Q=identity))
    assert res.diagnostic == "QM not in reduced echelon form"


def test_verify_counts_bad_blocks(unit_zero_gf2):
    A, part = unit_zero_gf2
    cert = certify(A, part)
    res = verify_certificate(A, part, replace(cert, a_prime=(1,), m=1))
    assert not res and res.diagnostic.startswith("bad-block count exceeds m−1")
    res = verify_certificate(A, part, replace(cert, possibly_bad_blocks=(2,)))
    assert not res and "not listed" in res.diagnostic


def test_group_orders():
    assert len(general_linear_group(2, 2)) == 6
    assert len(general_linear_group(2, 3)) == 168
    assert len(general_linear_group(3, 3)) == 11232
    assert len(general_linear_group(4, 2)) == 96  # |GL(2, Z/4)|


def test_bruteforce_examples(all_ones_gf2):
    assert t_max_bruteforce(all_ones_gf2[0]) == 1
    assert t_max_bruteforce(IndexedMatrix.identity(GF3, [1, 2, 3])) == 3
    assert t_max_bruteforce(IndexedMatrix.zeros(GF3, [1, 2], [1, 2, 3])) == 0
    with pytest.raises(UnsupportedRingError):
        t_max_bruteforce(IndexedMatrix.zeros(Ring.mod(5), [1, 2, 3, 4], [1]))
    with pytest.raises(UnsupportedRingError):
        t_max_bruteforce(IndexedMatrix.zeros(ZZ, [1], [1]))


def test_lcg_matches_recurrence():
    a, c, mask = 6364136223846793005, 1442695040888963407, (1 << 64) - 1
    state = (42 * a + c) & mask
    expected = []
    for _ in range(5):
        state = (state * a + c) & mask
        expected.append(state >> 32)
    rng = Lcg64(42)
    assert [rng.next32() for _ in range(5)] == expected


def test_lcg_bounded_draws():
    rng = Lcg64(1)
    draws = [rng.between(-3, 3) for _ in range(2000)]
    assert set(draws) == set(range(-3, 4))
    with pytest.raises(ValueError):
        rng.below(0)


def _bytes(spec, require=False):
    A, part = generate(spec, require)
    return dump_instance(Instance(A, part))


@pytest.mark.parametrize("ring", [ZZ, Ring.mod(6), GF3, Ring.rationals()])
def test_generation_deterministic(ring):
    spec = InstanceSpec(ring, 3, 6, 4, seed=7)
    assert _bytes(spec) == _bytes(spec)
    assert _bytes(spec) != _bytes(replace(spec, seed=8))


def test_require_hypothesis():
    for seed in range(20):
        A, part = generate(InstanceSpec(GF2, 2, 4, 2, seed=seed), require_hypothesis=True)
        assert hypothesis_holds(A, part)


def test_few_blocks_first_attempt():
    spec = InstanceSpec(GF3, 3, 5, 2, seed=3)
    assert generate(spec, True, max_attempts=1) == generate(spec)


def test_generation_cap():
    spec = InstanceSpec(Ring.gf(7), 1, 6, 6, seed=0)
    with pytest.raises(GenerationError, match="fewer blocks"):
        generate(spec, True, max_attempts=3)


def test_generated_partition_shape():
    for seed in range(30):
        A, part = generate(InstanceSpec(Ring.mod(4), 2, 7, 5, seed=seed))
        assert part.n == 5 and part.columns == A.cols


@pytest.mark.parametrize("args", [(0, 3, 1), (2, 3, 4), (2, 3, 0)])
def test_instance_spec_validation(args):
    with pytest.raises(ValueError):
        InstanceSpec(GF2, *args)
