"""Exact counting over F_q and the conditional rank law of the next map.

All counts are Python ints and all probabilities are ``Fraction`` values,
so nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .gfq import check_prime


def _nonneg(**kw: int) -> None:
    for name, v in kw.items():
        if v < 0:
            raise ValueError(f"{name} must be non-negative, got {v}")


def count_independent_tuples(n: int, k: int, q: int) -> int:
    """Number of ordered linearly independent k-tuples in F_q^n.

    The product over j < k of (q^n - q^j); 1 for k = 0 and 0 for k > n.
    """
    check_prime(q)
    _nonneg(n=n, k=k)
    if k > n:
        return 0
    qn = q**n
    out = 1
    for j in range(k):
        out *= qn - q**j
    return out


def q_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (0 when k > n)."""
    check_prime(q)
    _nonneg(n=n, k=k)
    if k > n:
        return 0
    num = count_independent_tuples(n, k, q)
    den = count_independent_tuples(k, k, q)
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def count_rank_matrices(m: int, n: int, r: int, q: int) -> int:
    """Number of m x n matrices over F_q of rank exactly r."""
    check_prime(q)
    _nonneg(m=m, n=n, r=r)
    if r > min(m, n):
        return 0
    num = count_independent_tuples(m, r, q) * count_independent_tuples(n, r, q)
    den = count_independent_tuples(r, r, q)
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def p_m_k_r(k: int, r: int, n_next: int, q: int) -> Fraction:
    """P[rank of the next map = r | the current kernel has dimension k].

    The next map is uniform among maps F_q^{n_next} -> (k-dim kernel), i.e.
    uniform over k x n_next matrices, so this is the rank-r count divided
    by q^(k * n_next).  Impossible ranks give 0.
    """
    check_prime(q)
    _nonneg(k=k, r=r, n_next=n_next)
    if r > min(k, n_next):
        return Fraction(0)
    return Fraction(count_rank_matrices(k, n_next, r, q), q ** (k * n_next))


def p_limit_argmax(k: int, n_next: int) -> int:
    """Rank at which the conditional rank law concentrates as q grows."""
    _nonneg(k=k, n_next=n_next)
    return min(k, n_next)
