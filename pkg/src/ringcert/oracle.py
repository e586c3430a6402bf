"""Independent checks and the random instance generator.

Nothing here touches the engine: :func:`verify_certificate` recomputes every
claim of a certificate from ``M`` and the partition, and
:func:`t_max_bruteforce` enumerates the whole general linear group of a small
residue ring with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .echelon import count_unit_columns, unit_column_capacity
from .errors import GenerationError, UnsupportedRingError
from .matrices import IndexedMatrix
from .rings import INTEGERS, RATIONALS, Ring
from .transversal import ColumnPartition, hypothesis_holds

PRNG_ALGORITHM = "lcg64-knuth-mmix"
DEFAULT_MAX_ATTEMPTS = 20000
BRUTEFORCE_LIMIT = 300_000


# -- certificate verification ----------------------------------------------------

@dataclass(frozen=True)
class Verification:
    ok: bool
    diagnostic: str = "ok"
    bad_blocks: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def _bad_blocks(QM: IndexedMatrix, rows, partition: ColumnPartition) -> tuple[int, ...]:
    ring = QM.ring
    bad = []
    for i, block in enumerate(partition.blocks, start=1):
        for c in block:
            has_unit = has_nonunit = False
            for r in rows:
                x = QM[r, c]
                if x == 0:
                    continue
                if ring.is_unit(x):
                    has_unit = True
                else:
                    has_nonunit = True
            if has_unit and not has_nonunit:
                bad.append(i)
                break
    return tuple(bad)


def verify_certificate(M: IndexedMatrix, partition: ColumnPartition, cert) -> Verification:
    """Recheck ``cert`` (anything with ``Q``, ``a_prime``, ``m``,
    ``possibly_bad_blocks``) against ``M``; report the first failed check."""
    Q = cert.Q
    p = len(M.rows)
    if Q.ring != M.ring or Q.rows != M.rows or Q.cols != M.rows:
        return Verification(False, "Q has the wrong shape or ring")
    if not Q.ring.is_unit(Q.determinant()):
        return Verification(False, "Q not invertible")
    a_prime = tuple(cert.a_prime)
    if not a_prime:
        return Verification(False, "A′ empty")
    if len(set(a_prime)) != len(a_prime) or not set(a_prime) <= set(M.rows):
        return Verification(False, "A′ is not a set of row indices")
    if cert.m != len(a_prime):
        return Verification(False, f"m mismatch: m = {cert.m} but |A′| = {len(a_prime)}")
    if not 1 <= cert.m <= p:
        return Verification(False, f"m = {cert.m} out of range 1..{p}")
    if any(i not in range(1, partition.n + 1) for i in cert.possibly_bad_blocks):
        return Verification(False, "possibly-bad block index out of range")
    QM = Q @ M
    if count_unit_columns(QM) != unit_column_capacity(M):
        return Verification(False, "QM not in reduced echelon form")
    bad = _bad_blocks(QM, a_prime, partition)
    if len(bad) > cert.m - 1:
        return Verification(
            False, f"bad-block count exceeds m−1: {len(bad)} bad blocks {list(bad)}, m = {cert.m}", bad
        )
    missing = sorted(set(bad) - set(cert.possibly_bad_blocks))
    if missing:
        return Verification(False, f"bad blocks {missing} not listed as possibly bad", bad)
    return Verification(True, "ok", bad)


# -- brute-force capacity ------------------------------------------------------------

def _det_stack(stack: np.ndarray) -> np.ndarray:
    n = stack.shape[1]
    total = np.zeros(stack.shape[0], dtype=np.int64)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = np.ones(stack.shape[0], dtype=np.int64)
        for i, j in enumerate(perm):
            term = term * stack[:, i, j]
        total = total - term if inv % 2 else total + term
    return total


@lru_cache(maxsize=None)
def general_linear_group(modulus: int, p: int) -> np.ndarray:
    """Every invertible ``p x p`` matrix over ``Z/modulus`` as an ``(N, p, p)`` array."""
    size = modulus ** (p * p)
    if size > BRUTEFORCE_LIMIT:
        raise UnsupportedRingError(
            f"enumerating {modulus}^{p * p} = {size} matrices exceeds the limit {BRUTEFORCE_LIMIT}"
        )
    allm = np.array(list(product(range(modulus), repeat=p * p)), dtype=np.int64).reshape(-1, p, p)
    det = _det_stack(allm) % modulus
    keep = np.gcd(det, modulus) == 1
    out = allm[keep]
    out.setflags(write=False)
    return out


def t_max_bruteforce(M: IndexedMatrix) -> int:
    """Maximum count of distinct unit-vector columns of ``QM`` over all invertible ``Q``."""
    ring = M.ring
    if not ring.is_finite:
        raise UnsupportedRingError(f"brute force needs a finite ring, got {ring}")
    p = len(M.rows)
    n = ring.modulus
    if not M.cols:
        return 0
    gl = general_linear_group(n, p)
    A = np.array(M.data, dtype=np.int64)
    QM = np.einsum("kij,jl->kil", gl, A) % n
    single = (QM != 0).sum(axis=1) == 1                 # (N, q)
    is_e = (QM == 1) & single[:, None, :]              # (N, p, q)
    per_q = is_e.any(axis=2).sum(axis=1)
    return int(per_q.max())


# -- instance generation -------------------------------------------------------------

class Lcg64:
    """Knuth's MMIX 64-bit linear congruential generator; outputs the high 32 bits."""

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK
        self.next32()

    def next32(self) -> int:
        self.state = (self.state * self.MULTIPLIER + self.INCREMENT) & self.MASK
        return self.state >> 32

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 32) - (1 << 32) % bound
        while True:
            x = self.next32()
            if x < limit:
                return x % bound

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class InstanceSpec:
    ring: Ring
    p: int
    q: int
    n: int
    entry_bound: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("need p >= 1 and q >= 1")
        if not 1 <= self.n <= self.q:
            raise ValueError("need 1 <= n <= q")
        if self.entry_bound < 1:
            raise ValueError("entry_bound must be positive")


def _entry(rng: Lcg64, ring: Ring, bound: int):
    if ring.kind == INTEGERS:
        return rng.between(-bound, bound)
    if ring.kind == RATIONALS:
        return Fraction(rng.between(-bound, bound), rng.between(1, bound))
    return rng.below(ring.modulus)


def _sample(rng: Lcg64, spec: InstanceSpec):
    ring = spec.ring
    data = [[_entry(rng, ring, spec.entry_bound) for _ in range(spec.q)] for _ in range(spec.p)]
    cols = list(range(1, spec.q + 1))
    for i in range(len(cols) - 1, 0, -1):
        j = rng.below(i + 1)
        cols[i], cols[j] = cols[j], cols[i]
    label = {}
    for k, c in enumerate(cols):
        label[c] = k + 1 if k < spec.n else rng.between(1, spec.n)
    blocks = [[c for c in range(1, spec.q + 1) if label[c] == i] for i in range(1, spec.n + 1)]
    return IndexedMatrix.from_rows(ring, data), ColumnPartition(blocks)


def generate(spec: InstanceSpec, require_hypothesis: bool = False,
             max_attempts: int = DEFAULT_MAX_ATTEMPTS):
    """Deterministic random instance ``(M, partition)`` for ``spec``.

    Entries are uniform residues (``Z/n``, ``GF(p)``) or uniform integers in
    ``[-entry_bound, entry_bound]`` (``Z``; numerators over denominators in
    ``[1, entry_bound]`` for ``Q``).  Blocks come from a uniform random
    surjection of the columns onto ``1..n``.  With ``require_hypothesis`` the
    sampler rejects until no invertible transversal submatrix exists, giving
    up after ``max_attempts`` draws.
    """
    rng = Lcg64(spec.seed)
    for _ in range(max_attempts):
        M, partition = _sample(rng, spec)
        if not require_hypothesis or hypothesis_holds(M, partition):
            return M, partition
    raise GenerationError(
        f"no hypothesis-satisfying instance in {max_attempts} attempts for "
        f"{spec.ring} p={spec.p} q={spec.q} n={spec.n}; fewer blocks make the hypothesis likelier (n < p always holds)"
    )
