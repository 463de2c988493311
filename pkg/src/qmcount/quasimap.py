"""Counting data, dimension formulas, QM numbers and easy KM numbers.

A quasimap P^k -> P^n of degree d is an (n+1)-tuple of degree-d forms up to
scale, so the quasimap space is P^{n_knd(k, n, d)}.  Product sources
P^{k_1} x ... x P^{k_s} use multi-degrees and n_multi.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb, prod
from typing import List, Sequence, Tuple, Union

from .cohomology import Class, TruncatedRing, integrate

IntOrVec = Union[int, Sequence[int]]


class UnbalancedProblemError(ValueError):
    def __init__(self, dimension: int):
        self.dimension = dimension
        super().__init__(f"virtual dimension is {dimension}, expected 0 for a counting problem")


class UnbalancedIntegralWarning(UserWarning):
    pass


def n_knd(k: int, n: int, d: int) -> int:
    """Dimension of the projective space QMap_d(P^k, P^n)."""
    if min(k, n, d) < 0:
        raise ValueError("k, n, d must be non-negative")
    return (n + 1) * comb(d + k, k) - 1


def n_multi(ks: Sequence[int], n: int, ds: Sequence[int]) -> int:
    """Dimension of the quasimap space from P^{k_1} x ... x P^{k_s} of multi-degree ds."""
    ks, ds = tuple(ks), tuple(ds)
    if len(ks) != len(ds):
        raise ValueError(f"length mismatch: ks={ks}, ds={ds}")
    if min(ks + ds + (n,), default=0) < 0:
        raise ValueError("dimensions and degrees must be non-negative")
    return (n + 1) * prod(comb(d + k, k) for k, d in zip(ks, ds)) - 1


def _as_tuple(v: IntOrVec) -> Tuple[int, ...]:
    if isinstance(v, int):
        return (v,)
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class CyclePair:
    """A source cycle (linear subspace of the source, by dimension) paired with a target cycle (by codimension).

    For product sources source_dim is a vector, one entry per factor.
    """
    source_dim: IntOrVec
    target_codim: int

    @property
    def dims(self) -> Tuple[int, ...]:
        return _as_tuple(self.source_dim)

    @property
    def total_source_dim(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True)
class CountingData:
    source_dim: IntOrVec
    target_dim: int
    degree: IntOrVec
    cycles: Tuple[CyclePair, ...] = field(default_factory=tuple)

    def __post_init__(self):
        cycles = tuple(c if isinstance(c, CyclePair) else CyclePair(*c) for c in self.cycles)
        object.__setattr__(self, "cycles", cycles)
        ks, ds = self.ks, self.ds
        if len(ks) != len(ds):
            raise ValueError(f"degree vector {ds} does not match source dimensions {ks}")
        if self.target_dim < 0 or min(ks) < 0 or min(ds) < 0:
            raise ValueError("dimensions and degrees must be non-negative")
        for i, c in enumerate(cycles, 1):
            dims = c.dims
            if len(dims) != len(ks):
                raise ValueError(f"cycle {i}: source_dim {c.source_dim} does not match source factors {ks}")
            if any(x < 0 or x > k for x, k in zip(dims, ks)):
                raise ValueError(f"cycle {i}: source_dim {c.source_dim} out of range for source {ks}")
            if not 0 <= c.target_codim <= self.target_dim + 1:
                raise ValueError(f"cycle {i}: target_codim {c.target_codim} out of range 0..{self.target_dim + 1}")

    @property
    def ks(self) -> Tuple[int, ...]:
        return _as_tuple(self.source_dim)

    @property
    def ds(self) -> Tuple[int, ...]:
        return _as_tuple(self.degree)

    @property
    def is_product_source(self) -> bool:
        return not isinstance(self.source_dim, int)

    @property
    def space_dim(self) -> int:
        return n_multi(self.ks, self.target_dim, self.ds)

    def with_cycles(self, cycles) -> "CountingData":
        return CountingData(self.source_dim, self.target_dim, self.degree, tuple(cycles))

    def to_json(self) -> dict:
        def enc(v):
            return v if isinstance(v, int) else list(v)
        return {
            "source_dim": enc(self.source_dim),
            "target_dim": self.target_dim,
            "degree": enc(self.degree),
            "cycles": [{"source_dim": enc(c.source_dim), "target_codim": c.target_codim} for c in self.cycles],
        }


def virtual_dimension(D: CountingData) -> int:
    return D.space_dim + sum(c.total_source_dim for c in D.cycles) - sum(c.target_codim for c in D.cycles)


def h_name(D: CountingData, i: int, j: int = 0) -> str:
    """Generator name of the source hyperplane class of cycle i (1-based), factor j (0-based)."""
    return f"h{i}" if not D.is_product_source else f"h{i}_{j + 1}"


def variety_ring(D: CountingData) -> TruncatedRing:
    """Cohomology of QMap x prod_i c_i^X; the h-generators of point factors are omitted."""
    gens = [("H", D.space_dim)] if D.space_dim > 0 else []
    for i, c in enumerate(D.cycles, 1):
        for j, m in enumerate(c.dims):
            if m > 0:
                gens.append((h_name(D, i, j), m))
    return TruncatedRing(gens)


def cycle_linear_forms(D: CountingData, ring: TruncatedRing, H: Class, h_of) -> List[Class]:
    """The classes H + sum_j d_j h_{i,j}, one per cycle.  h_of(i, j) gives the h class or None."""
    forms = []
    for i, c in enumerate(D.cycles, 1):
        form = H
        for j, (m, d) in enumerate(zip(c.dims, D.ds)):
            if m > 0 and d:
                form = form + d * h_of(i, j)
        forms.append(form)
    return forms


def euler_integrand(D: CountingData) -> Class:
    """prod_i (H + d h_i)^{codim_i} over the variety ring."""
    ring = variety_ring(D)
    H = ring.gen("H") if "H" in ring.names else ring.zero()

    def h_of(i, j):
        return ring.gen(h_name(D, i, j))

    out = ring.one()
    for form, c in zip(cycle_linear_forms(D, ring, H, h_of), D.cycles):
        out = out * form ** c.target_codim
    return out


def qm_integral(D: CountingData) -> int:
    """Top coefficient of the Euler-class product, without the balance check."""
    return integrate(euler_integrand(D))


def qm_number(D: CountingData, force: bool = False) -> int:
    """The QM number of balanced counting data.

    With force=True an unbalanced problem returns the top coefficient anyway
    and emits an UnbalancedIntegralWarning.
    """
    vd = virtual_dimension(D)
    if vd != 0:
        if not force:
            raise UnbalancedProblemError(vd)
        warnings.warn(f"unbalanced data (virtual dimension {vd}); integral is not a count",
                      UnbalancedIntegralWarning, stacklevel=2)
    return qm_integral(D)


def km_easy(k: int, n: int, d: int, codims: Sequence[int]) -> int:
    """KM number when every source cycle is a point: 1 iff the codims exactly fill QMap."""
    return 1 if n_knd(k, n, d) == sum(codims) else 0
