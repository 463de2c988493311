"""Higher quantum cohomology: the Frobenius algebra C[[q]][x] with counit eta.

eta(x^j) = q^d exactly when j = n_{k,n,d}; with product sources there is one
formal variable q_i per factor and eta(x^j) sums q^(d-vector) over all
multi-degrees with n_multi(ks, n, d) = j.  q-series are truncated at a
per-variable cutoff.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .quasimap import n_multi

Key = Tuple[int, Tuple[int, ...]]  # (x exponent, q exponent vector)
Coeff = Union[int, Fraction]


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class FrobeniusElement:
    """Polynomial in x with coefficients polynomials in q_1..q_s, truncated at q_cutoff."""

    __slots__ = ("_coeffs", "q_cutoff")

    def __init__(self, coeffs: Mapping[Key, Coeff], q_cutoff: Sequence[int]):
        cut = tuple(int(c) for c in q_cutoff)
        clean = {}
        for (j, qs), c in coeffs.items():
            qs = tuple(qs)
            if len(qs) != len(cut):
                raise ValueError(f"q exponent {qs} does not match cutoff {cut}")
            if j < 0 or any(e < 0 for e in qs):
                raise ValueError("exponents must be non-negative")
            if c and all(e <= m for e, m in zip(qs, cut)):
                clean[(int(j), qs)] = _norm(c)
        object.__setattr__(self, "_coeffs", clean)
        object.__setattr__(self, "q_cutoff", cut)

    def __setattr__(self, key, value):
        raise AttributeError("FrobeniusElement is immutable")

    @classmethod
    def x_power(cls, j: int, q_cutoff: Sequence[int], coeff: Coeff = 1) -> "FrobeniusElement":
        return cls({(j, (0,) * len(q_cutoff)): coeff}, q_cutoff)

    @classmethod
    def from_x_poly(cls, coeffs: Sequence[Coeff], q_cutoff: Sequence[int]) -> "FrobeniusElement":
        zero = (0,) * len(q_cutoff)
        return cls({(j, zero): c for j, c in enumerate(coeffs)}, q_cutoff)

    @property
    def coeffs(self) -> Dict[Key, Coeff]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def x_degree(self) -> int:
        return max((j for j, _ in self._coeffs), default=-1)

    def q_part(self, qs: Sequence[int]) -> Dict[int, Coeff]:
        """Coefficients of q^qs as a map x-exponent -> coefficient."""
        qs = tuple(qs)
        return {j: c for (j, e), c in self._coeffs.items() if e == qs}

    def is_x_constant(self) -> bool:
        return all(j == 0 for j, _ in self._coeffs)

    def with_cutoff(self, q_cutoff: Sequence[int]) -> "FrobeniusElement":
        return FrobeniusElement(self._coeffs, q_cutoff)

    def _check(self, other: "FrobeniusElement"):
        if not isinstance(other, FrobeniusElement):
            return NotImplemented
        if len(other.q_cutoff) != len(self.q_cutoff):
            raise ValueError("elements have different numbers of q variables")
        return tuple(min(a, b) for a, b in zip(self.q_cutoff, other.q_cutoff))

    def __add__(self, other):
        if isinstance(other, int):
            other = FrobeniusElement.x_power(0, self.q_cutoff, other)
        cut = self._check(other)
        if cut is NotImplemented:
            return cut
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return FrobeniusElement(out, cut)

    __radd__ = __add__

    def __neg__(self):
        return FrobeniusElement({k: -c for k, c in self._coeffs.items()}, self.q_cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FrobeniusElement({k: c * other for k, c in self._coeffs.items()}, self.q_cutoff)
        cut = self._check(other)
        if cut is NotImplemented:
            return cut
        out: Dict[Key, Coeff] = {}
        for (ja, qa), ca in self._coeffs.items():
            for (jb, qb), cb in other._coeffs.items():
                qs = tuple(x + y for x, y in zip(qa, qb))
                if all(e <= m for e, m in zip(qs, cut)):
                    key = (ja + jb, qs)
                    out[key] = out.get(key, 0) + ca * cb
        return FrobeniusElement(out, cut)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = FrobeniusElement.x_power(0, self.q_cutoff)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = FrobeniusElement.x_power(0, self.q_cutoff, other)
        if not isinstance(other, FrobeniusElement):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        return f"FrobeniusElement({self}, q_cutoff={self.q_cutoff})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        single = len(self.q_cutoff) == 1
        parts = []
        for (j, qs), c in sorted(self._coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            factors = []
            if j:
                factors.append("x" if j == 1 else f"x^{j}")
            for i, e in enumerate(qs):
                if e:
                    name = "q" if single else f"q{i + 1}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        """Coefficient map keyed by "x^j q^a,b,..." strings."""
        terms = {}
        for (j, qs), c in sorted(self._coeffs.items()):
            key = f"x^{j} q^{','.join(map(str, qs))}"
            terms[key] = c if isinstance(c, int) else str(c)
        return {"q_cutoff": list(self.q_cutoff), "terms": terms}


@dataclass(frozen=True)
class QGeometry:
    ks: Tuple[int, ...]
    n: int

    def __post_init__(self):
        ks = (self.ks,) if isinstance(self.ks, int) else tuple(self.ks)
        object.__setattr__(self, "ks", ks)
        if not ks or any(k < 1 for k in ks):
            raise ValueError(f"source dimensions must be a non-empty vector of positive ints, got {ks}")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def rank(self) -> int:
        return len(self.ks)

    def exponent(self, ds: Sequence[int]) -> int:
        return n_multi(self.ks, self.n, ds)

    def exponent_table(self, q_cutoff: Sequence[int]) -> Dict[int, List[Tuple[int, ...]]]:
        """x-exponent -> multi-degrees within the cutoff that it pairs with."""
        table: Dict[int, List[Tuple[int, ...]]] = {}
        for ds in itertools.product(*(range(c + 1) for c in q_cutoff)):
            table.setdefault(self.exponent(ds), []).append(ds)
        return table


def eta(p: FrobeniusElement, geom: QGeometry) -> FrobeniusElement:
    """The counit: x^j -> sum of q^d over multi-degrees d with n_multi(d) = j."""
    if len(p.q_cutoff) != geom.rank:
        raise ValueError(f"element has {len(p.q_cutoff)} q variables, geometry needs {geom.rank}")
    table = geom.exponent_table(p.q_cutoff)
    out: Dict[Key, Coeff] = {}
    for (j, qa), c in p.coeffs.items():
        for ds in table.get(j, ()):
            qs = tuple(a + b for a, b in zip(qa, ds))
            out[(0, qs)] = out.get((0, qs), 0) + c
    return FrobeniusElement(out, p.q_cutoff)


def _default_cutoff(geom: QGeometry, q_cutoff) -> Tuple[int, ...]:
    if q_cutoff is None:
        return (4,) * geom.rank
    if isinstance(q_cutoff, int):
        return (q_cutoff,) * geom.rank
    return tuple(q_cutoff)


def cqp(js: Iterable[int], geom: QGeometry, q_cutoff=None) -> FrobeniusElement:
    """Cyclic quantum product eta(x^{j_1} ... x^{j_l}) of target cohomology classes."""
    js = list(js)
    for j in js:
        if not 0 <= j <= geom.n:
            raise ValueError(f"x^{j} is not a cohomology class of P^{geom.n}")
    cut = _default_cutoff(geom, q_cutoff)
    return eta(FrobeniusElement.x_power(sum(js), cut), geom)


def pairing_matrix(geom: QGeometry, x_max: int, q_cutoff=None) -> List[List[FrobeniusElement]]:
    if x_max < 0:
        raise ValueError("x_max must be non-negative")
    cut = _default_cutoff(geom, q_cutoff)
    cache = {s: eta(FrobeniusElement.x_power(s, cut), geom) for s in range(2 * x_max + 1)}
    return [[cache[a + b] for b in range(x_max + 1)] for a in range(x_max + 1)]


class KernelWitnessError(RuntimeError):
    pass


def kernel_witness_check(geom: QGeometry, p: FrobeniusElement, max_degree: int = 10_000) -> int:
    """Find j with eta(p x^j) != 0 following the zero-kernel argument for k >= 2.

    With delta the top q-degree of p, d is chosen so that n(d) >= deg p_delta
    and n(d) + deg p_i < n(d+1) for every lower q-degree i.  Then
    j = n(d) - deg p_delta makes q^(delta+d) appear in eta(p x^j) with the
    leading coefficient of p_delta.  The claim is verified by direct evaluation.
    """
    if geom.rank != 1:
        raise ValueError("kernel witness is implemented for a single source factor")
    if geom.ks[0] < 2:
        raise ValueError("the zero-kernel property needs k >= 2")
    if p.is_zero():
        raise ValueError("p = 0 has no witness")
    by_q: Dict[int, int] = {}
    for (j, (e,)), _ in p.coeffs.items():
        by_q[e] = max(by_q.get(e, -1), j)
    delta = max(by_q)
    top = by_q[delta]
    lower = [deg for e, deg in by_q.items() if e < delta]
    for d in range(max_degree + 1):
        nd, nd1 = geom.exponent((d,)), geom.exponent((d + 1,))
        if nd >= top and all(nd + deg < nd1 for deg in lower):
            break
    else:
        raise KernelWitnessError(f"no admissible degree up to {max_degree}")
    j = nd - top
    cut = (max(p.q_cutoff[0], delta + d),)
    value = eta(p.with_cutoff(cut) * FrobeniusElement.x_power(j, cut), geom)
    if value.q_part((delta + d,)).get(0, 0) == 0:
        raise KernelWitnessError(f"eta(p x^{j}) lacks the q^{delta + d} term")
    return j


def quotient_relation(n: int, j: int, q_cutoff: int) -> FrobeniusElement:
    """eta((x^{n+1} - q) x^j) for P^1 sources; zero by the classical quantum relation."""
    geom = QGeometry((1,), n)
    cut = (q_cutoff,)
    rel = FrobeniusElement({(n + 1 + j, (0,)): 1, (j, (1,)): -1}, cut)
    return eta(rel, geom)
