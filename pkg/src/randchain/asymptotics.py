"""Large-q limits: the dominant nullity path and the concentration value of beta_m."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def positive_part(x: int) -> int:
    return max(0, x)


def _dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(n) for n in dims)
    if not dims:
        raise ValueError("dims must contain at least n_0")
    if any(n < 0 for n in dims):
        raise ValueError(f"dims must be non-negative, got {dims}")
    return dims


def istar_sequence(dims: Sequence[int], j: int) -> tuple[int, ...]:
    """Nullities (i*_0, ..., i*_j) that carry all mass as q -> infinity.

    i*_0 = n_0 and i*_l = (n_l - i*_{l-1})_+.
    """
    dims = _dims(dims)
    if not 0 <= j < len(dims):
        raise ValueError(f"length j={j} outside 0..{len(dims) - 1}")
    seq = [dims[0]]
    for l in range(1, j + 1):
        seq.append(positive_part(dims[l] - seq[-1]))
    return tuple(seq)


def b_limit(dims: Sequence[int], m: int) -> int:
    """Value B_m at which beta_m concentrates; needs n_{m+1}."""
    dims = _dims(dims)
    if not 0 <= m < len(dims) - 1:
        raise ValueError(
            f"degree m={m} outside 0..{len(dims) - 2} (B_m needs n_{m + 1})"
        )
    return positive_part(istar_sequence(dims, m)[m] - dims[m + 1])


def b_limit_nested(dims: Sequence[int], m: int) -> int:
    """B_m evaluated as the literal nested positive-part expression.

    (-n_{m+1} + (n_m - (n_{m-1} - ( ... - (n_1 - n_0)_+ ... )_+)_+)_+)_+,
    where the innermost bracket for m = 0 is just n_0.
    """
    dims = _dims(dims)
    if not 0 <= m < len(dims) - 1:
        raise ValueError(f"degree m={m} outside 0..{len(dims) - 2}")

    def inner(l: int) -> int:
        if l == 0:
            return dims[0]
        return positive_part(dims[l] - inner(l - 1))

    return positive_part(-dims[m + 1] + inner(m))


def limiting_rank(dims: Sequence[int], m: int) -> int:
    """Rank of A_m that has probability -> 1 as q grows: n_m - i*_m."""
    dims = _dims(dims)
    if not 1 <= m < len(dims):
        raise ValueError(f"degree m={m} outside 1..{len(dims) - 1}")
    return dims[m] - istar_sequence(dims, m)[m]


def limiting_moment(dims: Sequence[int], m: int, t: int) -> int:
    if t < 0:
        raise ValueError(f"moment order must be non-negative, got {t}")
    return b_limit(dims, m) ** t


@dataclass(frozen=True)
class LimitReport:
    m: int
    b_limit: int
    istar: tuple[int, ...]
    limiting_rank: int


def limit_report(dims: Sequence[int], m: int) -> LimitReport:
    dims = _dims(dims)
    b = b_limit(dims, m)
    istar = istar_sequence(dims, m)
    # rank(A_0) = 0 since i*_0 = n_0
    return LimitReport(m=m, b_limit=b, istar=istar, limiting_rank=dims[m] - istar[m])
