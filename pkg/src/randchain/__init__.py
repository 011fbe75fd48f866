"""Exact and Monte Carlo Betti number laws of uniform random chain complexes over F_q."""

from .asymptotics import (
    LimitReport,
    b_limit,
    istar_sequence,
    limit_report,
    limiting_moment,
    limiting_rank,
    positive_part,
)
from .betti import ChainSpec, DiscreteDist, betti_distribution, betti_moment, rank_distribution
from .gfq import MatrixFq, PrimeField, kernel_basis, mat_mul, nullity, rank
from .qcount import count_independent_tuples, count_rank_matrices, p_limit_argmax, p_m_k_r, q_binomial
from .sampler import (
    BudgetExceeded,
    EmpiricalDist,
    SampledComplex,
    empirical_betti,
    enumerate_betti_oracle,
    sample_complex,
    tv_distance,
)

__version__ = "0.1.0"
