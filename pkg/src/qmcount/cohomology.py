"""Exact arithmetic in truncated polynomial rings Z[g_1..g_r]/(g_j^(m_j+1)).

Such a ring is the integral cohomology of P^{m_1} x ... x P^{m_r}.  Classes
are sparse maps from exponent tuples to Python ints, truncated eagerly.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponents = Tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class NotAUnitError(ValueError):
    pass


class MissingImageError(KeyError):
    pass


class TruncatedRing:
    """Generators with nilpotency orders: g^(m+1) = 0 for each (name, m)."""

    __slots__ = ("_names", "_orders", "_index")

    def __init__(self, generators: Iterable[Tuple[str, int]] = ()):
        names, orders = [], []
        for name, m in generators:
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"nilpotency order of {name!r} must be a positive integer, got {m!r}")
            names.append(str(name))
            orders.append(m)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self._names = tuple(names)
        self._orders = tuple(orders)
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def projective(cls, *dims: int, prefix: str = "z") -> "TruncatedRing":
        """Cohomology ring of P^{dims[0]} x P^{dims[1]} x ...; factors of dimension 0 are skipped."""
        if len(dims) == 1:
            gens = [(prefix, dims[0])] if dims[0] > 0 else []
        else:
            gens = [(f"{prefix}{i + 1}", m) for i, m in enumerate(dims) if m > 0]
        return cls(gens)

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def orders(self) -> Tuple[int, ...]:
        return self._orders

    @property
    def generators(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(zip(self._names, self._orders))

    @property
    def rank(self) -> int:
        return len(self._names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"ring has no generator {name!r}") from None

    def top(self) -> Exponents:
        return self._orders

    def __eq__(self, other):
        return isinstance(other, TruncatedRing) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        body = ", ".join(f"{n}^{m + 1}" for n, m in self.generators)
        return f"TruncatedRing({body})"

    # constructors for elements

    def zero(self) -> "Class":
        return Class(self, {})

    def one(self) -> "Class":
        return self.const(1)

    def const(self, c: int) -> "Class":
        return Class(self, {(0,) * self.rank: int(c)})

    def gen(self, name: str) -> "Class":
        exps = [0] * self.rank
        exps[self.index(name)] = 1
        return Class(self, {tuple(exps): 1})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Class":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.rank or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {self!r}")
        return Class(self, {exps: int(coeff)})

    def _fits(self, exps: Exponents) -> bool:
        return all(e <= m for e, m in zip(exps, self._orders))


Scalar = int
ClassLike = Union["Class", int]


class Class:
    """An element of a TruncatedRing.  Immutable."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: TruncatedRing, terms: Mapping[Exponents, int]):
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if c and ring._fits(exps):
                if len(exps) != ring.rank:
                    raise ValueError(f"exponent vector {exps} has wrong length for {ring!r}")
                clean[exps] = int(c)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, key, value):
        raise AttributeError("Class is immutable")

    @property
    def terms(self) -> Dict[Exponents, int]:
        return dict(self._terms)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    @property
    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.rank, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest total degree present (-1 for zero)."""
        return max((sum(e) for e in self._terms), default=-1)

    def _coerce(self, other: ClassLike) -> "Class":
        if isinstance(other, Class):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Class(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Class(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        orders = self.ring.orders
        out: Dict[Exponents, int] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if all(x <= m for x, m in zip(e, orders)):
                    out[e] = out.get(e, 0) + ca * cb
        return Class(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {e!r}")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Class):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Class({format_class(self)})"

    def __str__(self):
        return format_class(self)

    def invert_unit(self) -> "Class":
        return invert_unit(self)

    def integrate(self) -> int:
        return integrate(self)

    def substitute(self, target: TruncatedRing, images: Mapping[str, ClassLike]) -> "Class":
        return substitute(self, target, images)


def format_class(a: Class) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exps in sorted(a._terms, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = a._terms[exps]
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(a.ring.names, exps) if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def add(a: Class, b: Class) -> Class:
    return a + b


def mul(a: Class, b: Class) -> Class:
    return a * b


def pow(a: Class, e: int) -> Class:  # noqa: A001 - mirrors the ring operation name
    return a ** e


def invert_unit(a: Class) -> Class:
    """Inverse of a class with constant term +-1, by the terminating geometric series."""
    s = a.constant_term
    if s not in (1, -1):
        raise NotAUnitError(f"constant term {s} is not +-1 in {format_class(a)}")
    ring = a.ring
    u = a * s - 1  # nilpotent
    neg_u = -u
    result = ring.one()
    term = ring.one()
    for _ in range(sum(ring.orders)):
        term = term * neg_u
        if term.is_zero():
            break
        result = result + term
    return result * s


def integrate(a: Class) -> int:
    """Coefficient of the top monomial, i.e. integration over the product of projective spaces."""
    return a.coefficient(a.ring.top())


def substitute(a: Class, target: TruncatedRing, images: Mapping[str, ClassLike]) -> Class:
    """Apply the ring homomorphism sending each generator of a.ring to images[name]."""
    imgs = []
    for name in a.ring.names:
        if name not in images:
            raise MissingImageError(f"no image given for generator {name!r}")
        img = images[name]
        if isinstance(img, int):
            img = target.const(img)
        if img.ring != target:
            raise RingMismatchError(f"image of {name!r} lives in {img.ring!r}, expected {target!r}")
        imgs.append(img)
    # cache powers of each image
    cache = [dict() for _ in imgs]

    def power(i: int, e: int) -> Class:
        if e not in cache[i]:
            cache[i][e] = imgs[i] ** e
        return cache[i][e]

    out = target.zero()
    for exps, c in a._terms.items():
        t = target.const(c)
        for i, e in enumerate(exps):
            if e:
                t = t * power(i, e)
                if t.is_zero():
                    break
        out = out + t
    return out
