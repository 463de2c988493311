"""Excess-intersection contributions of quasi-stable strata and the QM = KM + PQM ledger.

A stratum Z of the proper-quasimap locus inside Var = QMap x prod c_i^X is
described by hand: its own cohomology ring, where H and each h_i restrict to,
and its total Chern class.  The excess bundle has

    c(B_Z) = c(E)|_Z * c(Z) / (c(QMap)|_Z * prod c(c_i^X)|_Z)

and its top Chern number is the contribution of Z.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .cohomology import Class, MissingImageError, TruncatedRing, integrate, invert_unit
from .quasimap import CountingData, cycle_linear_forms, h_name, qm_number, variety_ring

Image = Union[Class, int, str]


@dataclass(frozen=True)
class Stratum:
    """A quasi-stable component Z of the proper-quasimap locus.

    restriction maps generator names of the variety ring ("H", "h1", ...) to
    classes over intrinsic_ring.  With fill_zero set, unlisted generators
    restrict to 0.  chern_cycles=None means the default prod (1 + h_i|_Z)^{dim_i + 1}.
    """
    label: str
    intrinsic_ring: TruncatedRing
    restriction: Mapping[str, Class]
    chern_Z: Class
    chern_cycles: Optional[Class] = None
    fill_zero: bool = False

    def __post_init__(self):
        R = self.intrinsic_ring
        for name, img in self.restriction.items():
            if not isinstance(img, Class) or img.ring != R:
                raise ValueError(f"stratum {self.label!r}: image of {name} is not a class over {R!r}")
        for what, c in (("chern_Z", self.chern_Z), ("chern_cycles", self.chern_cycles)):
            if c is None:
                continue
            if c.ring != R:
                raise ValueError(f"stratum {self.label!r}: {what} is over the wrong ring")
            if c.constant_term != 1:
                raise ValueError(f"stratum {self.label!r}: {what} must have constant term 1")

    @property
    def dim(self) -> int:
        return sum(self.intrinsic_ring.orders)

    def image(self, name: str) -> Class:
        if name in self.restriction:
            return self.restriction[name]
        if self.fill_zero:
            return self.intrinsic_ring.zero()
        raise MissingImageError(f"stratum {self.label!r} gives no restriction for {name!r}")

    def relabel(self, label: str) -> "Stratum":
        return Stratum(label, self.intrinsic_ring, dict(self.restriction), self.chern_Z,
                       self.chern_cycles, self.fill_zero)


def _chern_projective(ring: TruncatedRing) -> Class:
    """c(P^{m_1} x ... ) = prod (1 + z_j)^{m_j + 1}."""
    c = ring.one()
    for name, m in ring.generators:
        c = c * (1 + ring.gen(name)) ** (m + 1)
    return c


def _resolve(ring: TruncatedRing, img: Image) -> Class:
    if isinstance(img, Class):
        return img
    if isinstance(img, int):
        return ring.const(img)
    if img == "zero" or img == "0":
        return ring.zero()
    return ring.gen(img)


def _h_key(i: Union[int, str]) -> str:
    return i if isinstance(i, str) else f"h{i}"


def point_stratum(label: str = "point") -> Stratum:
    R = TruncatedRing()
    return Stratum(label, R, {}, R.one(), None, fill_zero=True)


def projective_stratum(m: int, H: Image = "z", h: Optional[Mapping] = None, label: str = "",
                       chern_Z: Optional[Class] = None, chern_cycles: Optional[Class] = None) -> Stratum:
    """Z = P^m with hyperplane class z.  H -> H, h_i -> h[i]; unlisted h_i restrict to 0.

    Images may be Class objects, integers, "z", or "zero".
    """
    if m == 0:
        return point_stratum(label or "point")
    R = TruncatedRing([("z", m)])
    restriction = {"H": _resolve(R, H)}
    for i, img in (h or {}).items():
        restriction[_h_key(i)] = _resolve(R, img)
    return Stratum(label or f"P^{m}", R, restriction,
                   chern_Z if chern_Z is not None else _chern_projective(R), chern_cycles, fill_zero=True)


def product_stratum(*dims: int, H: Optional[Class] = None, h: Optional[Mapping] = None, label: str = "",
                    chern_Z: Optional[Class] = None, chern_cycles: Optional[Class] = None) -> Stratum:
    """Z = P^{a} x P^{b} x ... with generators z1, z2, ... (factors of dimension 0 dropped).

    Build the ring first with product_ring(*dims) to form the images.
    """
    R = product_ring(*dims)
    restriction = {}
    if H is not None:
        restriction["H"] = H
    for i, img in (h or {}).items():
        restriction[_h_key(i)] = img
    name = label or " x ".join(f"P^{a}" for a in dims)
    return Stratum(name, R, restriction,
                   chern_Z if chern_Z is not None else _chern_projective(R), chern_cycles, fill_zero=True)


def product_ring(*dims: int) -> TruncatedRing:
    return TruncatedRing([(f"z{i + 1}", a) for i, a in enumerate(dims) if a > 0])


def default_chern_cycles(D: CountingData, Z: Stratum) -> Class:
    R = Z.intrinsic_ring
    c = R.one()
    for i, cyc in enumerate(D.cycles, 1):
        for j, m in enumerate(cyc.dims):
            if m > 0:
                c = c * (1 + Z.image(h_name(D, i, j))) ** (m + 1)
    return c


def excess_chern(D: CountingData, Z: Stratum) -> Class:
    """Total Chern class of the excess bundle B_Z, over Z's intrinsic ring."""
    R = Z.intrinsic_ring
    var = variety_ring(D)
    # every generator of Var needs an image, even if only to check completeness
    images = {name: Z.image(name) for name in var.names}
    H = images.get("H", R.zero())

    def h_of(i, j):
        return images[h_name(D, i, j)]

    equations = R.one()
    for form, c in zip(cycle_linear_forms(D, R, H, h_of), D.cycles):
        equations = equations * (1 + form) ** c.target_codim
    chern_cycles = Z.chern_cycles if Z.chern_cycles is not None else default_chern_cycles(D, Z)
    denominator = (1 + H) ** (D.space_dim + 1) * chern_cycles
    return equations * Z.chern_Z * invert_unit(denominator)


def pqm_contribution(D: CountingData, Z: Stratum) -> int:
    return integrate(excess_chern(D, Z))


QUASI_STABLE = "QUASI-STABLE"
NON_QUASISTABLE = "NON-QUASISTABLE"


@dataclass(frozen=True)
class Ledger:
    """Bookkeeping for QM = KM + PQM.

    residual is the part of qm - km not explained by certified contributions:
    qm - km - sum(contributions) on quasi-stable data, and qm - km on
    non-quasistable data, where no stratum contribution is certified and the
    naive sum is reported alongside for comparison.  Both are None when km
    is unknown; km_recovered = qm - sum(contributions) covers that case.
    """
    qm: int
    km: Optional[int]
    strata: Sequence[Stratum]
    contributions: Sequence[int]
    quasi_stable: bool
    naive_sum: int
    residual: Optional[int]

    @property
    def status(self) -> str:
        return QUASI_STABLE if self.quasi_stable else NON_QUASISTABLE

    @property
    def pqm(self) -> Optional[int]:
        return self.naive_sum if self.quasi_stable else None

    @property
    def km_recovered(self) -> Optional[int]:
        return self.qm - self.naive_sum if self.quasi_stable else None

    @property
    def balanced(self) -> Optional[bool]:
        if self.residual is None or not self.quasi_stable:
            return None
        return self.residual == 0

    def to_json(self) -> dict:
        return {
            "qm": self.qm,
            "km": self.km,
            "status": self.status,
            "quasi_stable": self.quasi_stable,
            "strata": [{"label": z.label, "dim": z.dim, "contribution": c}
                       for z, c in zip(self.strata, self.contributions)],
            "naive_sum": self.naive_sum,
            "pqm": self.pqm,
            "residual": self.residual,
            "km_recovered": self.km_recovered,
        }


def build_ledger(D: CountingData, km: Optional[int], strata: Sequence[Stratum],
                 quasi_stable: bool, force: bool = False) -> Ledger:
    qm = qm_number(D, force=force)
    contributions = [pqm_contribution(D, Z) for Z in strata]
    naive = sum(contributions)
    if km is None:
        residual = None
    elif quasi_stable:
        residual = qm - km - naive
    else:
        residual = qm - km
    return Ledger(qm, km, tuple(strata), tuple(contributions), quasi_stable, naive, residual)
