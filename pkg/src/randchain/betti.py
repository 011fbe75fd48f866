"""Exact laws of boundary ranks and Betti numbers of uniform random complexes.

The complex is bounded below: ``dims[0]`` is n_0, A_0 is the zero map, and
A_m : F_q^{n_m} -> F_q^{n_{m-1}} for 1 <= m <= M.  Given nul(A_{m-1}) = i,
A_m is uniform over maps into that i-dimensional kernel, so the nullities
form a Markov chain and each law is a forward pass over nullity states.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .gfq import PrimeField, check_prime
from .qcount import p_m_k_r


@dataclass(frozen=True)
class ChainSpec:
    """Field order and dimension sequence (n_0, ..., n_M)."""

    q: int
    dims: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.q)
        dims = tuple(int(n) for n in self.dims)
        if not dims:
            raise ValueError("dims must contain at least n_0")
        if any(n < 0 for n in dims):
            raise ValueError(f"dims must be non-negative, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def M(self) -> int:
        return len(self.dims) - 1

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    def n(self, m: int) -> int:
        """n_m, taken as 0 below degree 0."""
        if m < 0:
            return 0
        return self.dims[m]

    def with_q(self, q: int) -> "ChainSpec":
        return ChainSpec(q, self.dims)


class DiscreteDist(Mapping):
    """Finite distribution on non-negative integers with exact probabilities.

    Zero-probability outcomes are dropped; total mass must be exactly 1.
    """

    __slots__ = ("_p",)

    def __init__(self, probs: Mapping[int, Fraction | int]):
        p = {}
        for v, w in probs.items():
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative probability {w} at {v}")
            if w:
                p[int(v)] = w
        total = sum(p.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        self._p = dict(sorted(p.items()))

    @classmethod
    def point(cls, v: int) -> "DiscreteDist":
        return cls({v: 1})

    def __getitem__(self, v: int) -> Fraction:
        return self._p[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self._p)

    def __len__(self) -> int:
        return len(self._p)

    def prob(self, v: int) -> Fraction:
        return self._p.get(v, Fraction(0))

    def moment(self, t: int) -> Fraction:
        if t < 0:
            raise ValueError(f"moment order must be non-negative, got {t}")
        return sum((Fraction(v**t) * w for v, w in self._p.items()), Fraction(0))

    def mean(self) -> Fraction:
        return self.moment(1)

    def variance(self) -> Fraction:
        mu = self.mean()
        return self.moment(2) - mu * mu

    def argmax(self) -> int:
        # Ties go to the smallest value.
        return max(self._p, key=lambda v: (self._p[v], -v))

    def __eq__(self, other):
        if isinstance(other, DiscreteDist):
            return self._p == other._p
        if isinstance(other, Mapping):
            return self._p == {k: Fraction(w) for k, w in other.items() if w}
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"{v}: {w}" for v, w in self._p.items())
        return f"DiscreteDist({{{inner}}})"


def _step(nullity_law: dict[int, Fraction], n_next: int, q: int) -> dict[int, Fraction]:
    """Push a nullity law of A_l through A_{l+1} to get the nullity law of A_{l+1}."""
    out: dict[int, Fraction] = {}
    for i, w in nullity_law.items():
        for r in range(min(i, n_next) + 1):
            p = p_m_k_r(i, r, n_next, q)
            if p:
                k = n_next - r
                out[k] = out.get(k, Fraction(0)) + w * p
    return out


def nullity_law(spec: ChainSpec, m: int) -> dict[int, Fraction]:
    """Law of nul(A_m) as a plain dict, for 0 <= m <= M."""
    if not 0 <= m <= spec.M:
        raise ValueError(f"degree m={m} outside 0..{spec.M}")
    law = {spec.dims[0]: Fraction(1)}
    for l in range(1, m + 1):
        law = _step(law, spec.dims[l], spec.q)
    return law


def rank_distribution(spec: ChainSpec, m: int) -> DiscreteDist:
    """Exact law of rank(A_m); A_m = 0 for m <= 0."""
    if m <= 0:
        return DiscreteDist.point(0)
    if m > spec.M:
        raise ValueError(f"degree m={m} exceeds top degree M={spec.M}")
    n_m = spec.dims[m]
    return DiscreteDist({n_m - k: w for k, w in nullity_law(spec, m).items()})


def _check_betti_degree(spec: ChainSpec, m: int) -> None:
    if m == spec.M:
        raise ValueError(
            f"beta_{m} needs n_{m + 1}; extend dims (append 0 for a complex "
            f"that stops at degree {m})"
        )
    if not 0 <= m < spec.M:
        raise ValueError(f"degree m={m} outside 0..{spec.M - 1}")


def betti_distribution(spec: ChainSpec, m: int) -> DiscreteDist:
    """Exact law of beta_m = nul(A_m) - rank(A_{m+1}), for 0 <= m < M."""
    _check_betti_degree(spec, m)
    n_next = spec.dims[m + 1]
    out: dict[int, Fraction] = {}
    for k, w in nullity_law(spec, m).items():
        for r in range(min(k, n_next) + 1):
            p = p_m_k_r(k, r, n_next, spec.q)
            if p:
                out[k - r] = out.get(k - r, Fraction(0)) + w * p
    return DiscreteDist(out)


def betti_moment(spec: ChainSpec, m: int, t: int) -> Fraction:
    """E[beta_m ** t], exact."""
    if t < 0:
        raise ValueError(f"moment order must be non-negative, got {t}")
    return betti_distribution(spec, m).moment(t)
