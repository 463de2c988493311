"""Stratification of QMap_d(P^k, P^n) by the type of the proper-quasimap locus.

Shapes are closure shapes up to birational equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

from .quasimap import n_knd

MAPS, FRECKLE, SCAR = "maps", "m_freckle", "delta_scar"


@dataclass(frozen=True)
class StratumRow:
    kind: str
    codim: int
    shape: str
    index: Optional[int] = None  # m for freckle rows, Delta for scar rows
    closure_dim: Optional[int] = None
    generic_caveat: bool = False

    def __post_init__(self):
        if self.codim < 0:
            raise ValueError(f"negative codimension in {self}")
        if self.kind == MAPS and self.codim != 0:
            raise ValueError("the maps stratum is open")

    @property
    def label(self) -> str:
        if self.kind == MAPS:
            return "maps"
        if self.kind == FRECKLE:
            return f"{self.index}-freckle"
        return f"Delta={self.index} scar"

    def to_json(self) -> dict:
        return {"kind": self.kind, "label": self.label, "index": self.index, "codim": self.codim,
                "shape": self.shape, "closure_dim": self.closure_dim, "generic_caveat": self.generic_caveat}


def freckle_codim(k: int, n: int, m: int) -> int:
    """Codimension of the m-freckle stratum, for d large enough."""
    if n < k:
        raise ValueError(f"n={n} < k={k}: every quasimap is proper, use scar_locus_dim")
    if m < 1:
        raise ValueError("m must be at least 1")
    return m * (n + 1 - k)


def scar_closure_shape(n: int, d: int, delta: int) -> Tuple[int, int]:
    """Dimensions (a, b) of the closure P^a x P^b of the Delta-scar stratum for P^2 sources.

    P^a holds the residual degree d-Delta quasimap, P^b the common factor.
    """
    if not 1 <= delta <= d:
        raise ValueError(f"Delta={delta} out of range 1..{d}")
    return n_knd(2, n, d - delta), n_knd(2, 0, delta)


def scar_codim(n: int, d: int, delta: int) -> int:
    a, b = scar_closure_shape(n, d, delta)
    return n_knd(2, n, d) - a - b


def scar_locus_dim(k: int, n: int, d: int) -> int:
    """Dimension of the generic proper-quasimap locus when n < k."""
    if n >= k:
        raise ValueError(f"n={n} >= k={k}: generic quasimaps are maps")
    if d < 1:
        raise ValueError("d must be at least 1")
    return k - n - 1


def _p(a: int) -> str:
    return f"P^{a}"


def max_freckles_p2(d: int) -> int:
    """Largest m with a non-subsumed m-freckle stratum for P^2 sources.

    Degree-d curves through m general points form a P^{C(d+2,2)-1-m}; once that
    is a single curve the common zeros form a scar.  Reproduces d=1 -> 1 and
    d=2 -> 4 (five points fix a conic).
    """
    return comb(d + 2, 2) - 2


def _table_k1(n: int, d: int) -> List[StratumRow]:
    top = n_knd(1, n, d)
    if n == 0:
        return [StratumRow(FRECKLE, 0, _p(top), d, top)]
    rows = [StratumRow(MAPS, 0, _p(top), None, top)]
    for m in range(1, d + 1):
        a = n_knd(1, n, d - m)
        rows.append(StratumRow(FRECKLE, freckle_codim(1, n, m), f"QMap_{d - m} x P^{m} = {_p(a)} x {_p(m)}",
                               m, a + m))
    return rows


def _table_k2(n: int, d: int) -> List[StratumRow]:
    top = n_knd(2, n, d)
    rows: List[StratumRow] = []
    caveat = d >= 3
    if n >= 2:
        rows.append(StratumRow(MAPS, 0, _p(top), None, top))
        for m in range(1, max_freckles_p2(d) + 1):
            fiber = top - m * (n + 1)
            rows.append(StratumRow(FRECKLE, freckle_codim(2, n, m), f"{_p(fiber)}-bundle over Conf_{m}(P^2)",
                                   m, fiber + 2 * m, caveat))
    elif n == 1:
        # generic quasimaps to P^1 have d^2 freckles
        rows.append(StratumRow(FRECKLE, 0, _p(top), d * d, top, caveat))
    scars = range(1, d + 1) if n > 0 else range(d, d + 1)
    for delta in scars:
        a, b = scar_closure_shape(n, d, delta)
        shape = f"{_p(a)} x {_p(b)}" if a > 0 else _p(b)
        rows.append(StratumRow(SCAR, scar_codim(n, d, delta), shape, delta, a + b, caveat))
    return rows


def stratification_table(k: int, n: int, d: int) -> List[StratumRow]:
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    if k == 1:
        return _table_k1(n, d)
    if k == 2:
        return _table_k2(n, d)
    raise ValueError(f"stratification tables are only available for k in {{1, 2}}, got k={k}")
