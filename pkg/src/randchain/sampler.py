"""Monte Carlo sampling of uniform random chain complexes, plus a brute-force oracle.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence``.  ``Generator.integers`` draws bounded integers by
rejection (Lemire's method), so residues mod q carry no modulo bias.

Trials are split into fixed-size blocks; block ``b`` of a run with root seed
``s`` uses ``SeedSequence(s, spawn_key=(b,))``.  Histograms are merged by
addition, so the result does not depend on how blocks are spread across
worker processes.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .betti import ChainSpec, DiscreteDist, _check_betti_degree
from .gfq import MatrixFq, kernel_basis, mat_mul, rank

BLOCK_SIZE = 4096
DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    def __init__(self, states: int, budget: int):
        super().__init__(f"enumeration needs {states} states, budget is {budget}")
        self.states = states
        self.budget = budget


@dataclass(frozen=True)
class SampledComplex:
    spec: ChainSpec
    boundaries: tuple[MatrixFq, ...]  # A_1, ..., A_M

    def boundary(self, m: int) -> MatrixFq:
        """A_m for 1 <= m <= M."""
        if not 1 <= m <= len(self.boundaries):
            raise IndexError(m)
        return self.boundaries[m - 1]

    def betti(self, m: int) -> int:
        _check_betti_degree(self.spec, m)
        nul = self.spec.dims[0] if m == 0 else self.boundary(m).cols - rank(self.boundary(m))
        return nul - rank(self.boundary(m + 1))


@dataclass(frozen=True)
class EmpiricalDist:
    counts: Mapping[int, int]
    trials: int
    seed: int | None = None

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError("empirical distribution has no trials")
        if sum(self.counts.values()) != self.trials:
            raise ValueError("counts do not sum to trials")

    def frequencies(self) -> dict[int, Fraction]:
        return {v: Fraction(c, self.trials) for v, c in sorted(self.counts.items()) if c}

    def to_dist(self) -> DiscreteDist:
        return DiscreteDist(self.frequencies())

    def mean(self) -> float:
        return sum(v * c for v, c in self.counts.items()) / self.trials

    def variance(self) -> float:
        mu = self.mean()
        return sum(c * (v - mu) ** 2 for v, c in self.counts.items()) / self.trials


def make_rng(seed) -> np.random.Generator:
    """Generator from an int seed, a SeedSequence, or pass through a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _uniform_matrix(rows: int, cols: int, spec: ChainSpec, rng: np.random.Generator) -> MatrixFq:
    n = rows * cols
    entries = tuple(rng.integers(0, spec.q, size=n).tolist()) if n else ()
    return MatrixFq._trusted(rows, cols, entries, spec.field)


def _sample_boundaries(spec: ChainSpec, upto: int, rng: np.random.Generator) -> list[MatrixFq]:
    """A_1..A_upto, each uniform given its predecessor.

    A_m = K C with K a kernel basis of A_{m-1} and C uniform; X -> C is a
    bijection onto {X : A_{m-1} X = 0}.
    """
    dims = spec.dims
    out: list[MatrixFq] = []
    for m in range(1, upto + 1):
        if m == 1:
            a = _uniform_matrix(dims[0], dims[1], spec, rng)
        else:
            basis = kernel_basis(out[-1])
            coeffs = _uniform_matrix(basis.cols, dims[m], spec, rng)
            a = mat_mul(basis, coeffs)
        out.append(a)
    return out


def sample_complex(spec: ChainSpec, seed) -> SampledComplex:
    """Draw (A_1, ..., A_M) from the uniform random chain complex model."""
    rng = make_rng(seed)
    return SampledComplex(spec, tuple(_sample_boundaries(spec, spec.M, rng)))


def _betti_block(spec: ChainSpec, m: int, trials: int, seq: np.random.SeedSequence) -> Counter:
    rng = make_rng(seq)
    counts: Counter = Counter()
    n_m = spec.dims[m]
    for _ in range(trials):
        bs = _sample_boundaries(spec, m + 1, rng)
        nul = n_m if m == 0 else n_m - rank(bs[m - 1])
        counts[nul - rank(bs[m])] += 1
    return counts


def _blocks(seed: int, trials: int):
    nblocks = -(-trials // BLOCK_SIZE)
    for b in range(nblocks):
        size = min(BLOCK_SIZE, trials - b * BLOCK_SIZE)
        yield size, np.random.SeedSequence(seed, spawn_key=(b,))


def fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy) & ((1 << 64) - 1)


def empirical_betti(spec: ChainSpec, m: int, trials: int, seed: int | None = None, workers: int = 1) -> EmpiricalDist:
    """Histogram of beta_m over ``trials`` independent complexes."""
    _check_betti_degree(spec, m)
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if seed is None:
        seed = fresh_seed()
    blocks = list(_blocks(seed, trials))
    total: Counter = Counter()
    if workers <= 1 or len(blocks) == 1:
        for size, seq in blocks:
            total.update(_betti_block(spec, m, size, seq))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_betti_block, spec, m, size, seq) for size, seq in blocks]
            for f in futs:
                total.update(f.result())
    return EmpiricalDist(dict(sorted(total.items())), trials, seed)


def enumeration_states(spec: ChainSpec, m: int) -> int:
    """Upper bound on candidate matrices examined by the oracle for beta_m."""
    q, dims = spec.q, spec.dims
    total, prefixes = 0, 1
    for l in range(1, m + 2):
        space = q ** (dims[l - 1] * dims[l])
        total += prefixes * space
        prefixes *= space
    return total


def _all_matrices(rows: int, cols: int, spec: ChainSpec):
    fld = spec.field
    for entries in itertools.product(range(spec.q), repeat=rows * cols):
        yield MatrixFq._trusted(rows, cols, entries, fld)


def enumerate_betti_oracle(spec: ChainSpec, m: int, budget: int = DEFAULT_BUDGET) -> DiscreteDist:
    """Exact law of beta_m by exhaustive enumeration.

    Walks every A_1, then every admissible A_2 given A_1, and so on up to
    A_{m+1}; admissible sets are found by filtering all matrices of the right
    shape, and each stage is weighted by 1 / (size of its admissible set).
    Uses only rank and matrix products; no counting formulas.
    """
    _check_betti_degree(spec, m)
    states = enumeration_states(spec, m)
    if states > budget:
        raise BudgetExceeded(states, budget)
    dims = spec.dims
    everything = {l: list(_all_matrices(dims[l - 1], dims[l], spec)) for l in range(1, m + 2)}
    result: dict[int, Fraction] = {}

    def admissible(prev: MatrixFq | None, l: int) -> list[MatrixFq]:
        if prev is None:
            return everything[l]
        return [x for x in everything[l] if mat_mul(prev, x).is_zero()]

    def walk(l: int, prev: MatrixFq | None, nul_m: int, weight: Fraction):
        options = admissible(prev, l)
        w = weight / len(options)
        for a in options:
            if l == m + 1:
                b = nul_m - rank(a)
                result[b] = result.get(b, Fraction(0)) + w
            else:
                nul = a.cols - rank(a) if l == m else nul_m
                walk(l + 1, a, nul, w)

    walk(1, None, dims[0], Fraction(1))
    return DiscreteDist(result)


def tv_distance(a: DiscreteDist | EmpiricalDist, b: DiscreteDist | EmpiricalDist) -> Fraction:
    """Total variation distance, exact."""

    def probs(d) -> dict[int, Fraction]:
        if isinstance(d, EmpiricalDist):
            return d.frequencies()
        if not d:
            raise ValueError("empty distribution")
        return {v: Fraction(w) for v, w in d.items()}

    pa, pb = probs(a), probs(b)
    keys = set(pa) | set(pb)
    zero = Fraction(0)
    return sum((abs(pa.get(v, zero) - pb.get(v, zero)) for v in keys), zero) / 2
