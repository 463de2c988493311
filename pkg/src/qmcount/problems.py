"""Reading and writing problem files.

A problem file is a JSON object::

    {"source_dim": 1, "target_dim": 2, "degree": 1,
     "cycles": [{"source_dim": 0, "target_codim": 2}, ...],
     "km": 1,                   # optional
     "quasi_stable": true,      # optional, default true
     "strata": [...]}           # optional

Each stratum entry::

    {"label": "Z1", "dims": [1],
     "restrict_H": {"factor_exponents": [1], "coeff": 1},
     "restrict_h": {"4": {"factor_exponents": [1], "coeff": 1}},
     "chern_Z": [...], "chern_cycles": [...], "count": 1}

Images are a monomial spec ({"factor_exponents": [...], "coeff": c}), the
string "zero", or a list of monomial specs (their sum).  Unlisted h_i
restrict to zero.  "count" > 1 expands into that many identical strata.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

from .cohomology import Class, TruncatedRing
from .excess import Stratum, product_ring, _chern_projective
from .quasimap import CountingData, CyclePair


class ProblemFormatError(ValueError):
    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


@dataclass
class Problem:
    data: CountingData
    km: Optional[int] = None
    quasi_stable: bool = True
    strata: List[Stratum] = field(default_factory=list)
    raw: dict = field(default_factory=dict)


def _int(value: Any, where: str, minimum: Optional[int] = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemFormatError(where, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ProblemFormatError(where, f"expected an integer >= {minimum}, got {value}")
    return value


def _int_or_vec(value: Any, where: str) -> Union[int, Tuple[int, ...]]:
    if isinstance(value, list):
        if not value:
            raise ProblemFormatError(where, "empty vector")
        return tuple(_int(v, f"{where}[{i}]") for i, v in enumerate(value))
    return _int(value, where)


def parse_counting_data(obj: Any, where: str = "problem") -> CountingData:
    if not isinstance(obj, dict):
        raise ProblemFormatError(where, "expected a JSON object")
    for key in ("source_dim", "target_dim", "degree"):
        if key not in obj:
            raise ProblemFormatError(f"{where}.{key}", "missing field")
    k = _int_or_vec(obj["source_dim"], f"{where}.source_dim")
    n = _int(obj["target_dim"], f"{where}.target_dim")
    d = _int_or_vec(obj["degree"], f"{where}.degree")
    if isinstance(d, tuple) and isinstance(k, int):
        raise ProblemFormatError(f"{where}.degree", "a multi-degree needs a source_dim vector")
    raw_cycles = obj.get("cycles", [])
    if not isinstance(raw_cycles, list):
        raise ProblemFormatError(f"{where}.cycles", "expected a list")
    cycles = []
    for i, c in enumerate(raw_cycles):
        w = f"{where}.cycles[{i}]"
        if not isinstance(c, dict) or "source_dim" not in c or "target_codim" not in c:
            raise ProblemFormatError(w, "expected {\"source_dim\", \"target_codim\"}")
        cycles.append(CyclePair(_int_or_vec(c["source_dim"], f"{w}.source_dim"),
                                _int(c["target_codim"], f"{w}.target_codim")))
    try:
        return CountingData(k, n, d, tuple(cycles))
    except ValueError as exc:
        raise ProblemFormatError(where, str(exc)) from None


def _parse_class(spec: Any, ring: TruncatedRing, dims: List[int], where: str) -> Class:
    if spec == "zero" or spec == 0:
        return ring.zero()
    if isinstance(spec, list):
        out = ring.zero()
        for i, s in enumerate(spec):
            out = out + _parse_class(s, ring, dims, f"{where}[{i}]")
        return out
    if not isinstance(spec, dict) or "factor_exponents" not in spec:
        raise ProblemFormatError(where, "expected a monomial spec, a list of them, or \"zero\"")
    exps = spec["factor_exponents"]
    if not isinstance(exps, list) or len(exps) != len(dims):
        raise ProblemFormatError(f"{where}.factor_exponents", f"expected {len(dims)} exponents")
    coeff = _int(spec.get("coeff", 1), f"{where}.coeff", minimum=None)
    mono = []
    for j, (e, m) in enumerate(zip(exps, dims)):
        e = _int(e, f"{where}.factor_exponents[{j}]")
        if m == 0:
            if e:
                raise ProblemFormatError(f"{where}.factor_exponents[{j}]", "factor is a point")
        else:
            mono.append(e)
    if any(e > m for e, m in zip(mono, [m for m in dims if m > 0])):
        return ring.zero()
    return ring.monomial(mono, coeff)


def parse_stratum(obj: Any, D: CountingData, where: str) -> List[Stratum]:
    if not isinstance(obj, dict):
        raise ProblemFormatError(where, "expected a JSON object")
    label = str(obj.get("label", where))
    dims = obj.get("dims", [])
    if not isinstance(dims, list):
        raise ProblemFormatError(f"{where}.dims", "expected a list of integers")
    dims = [_int(m, f"{where}.dims[{i}]") for i, m in enumerate(dims)]
    ring = product_ring(*dims)
    restriction = {}
    if "restrict_H" in obj:
        restriction["H"] = _parse_class(obj["restrict_H"], ring, dims, f"{where}.restrict_H")
    rh = obj.get("restrict_h", {})
    if not isinstance(rh, dict):
        raise ProblemFormatError(f"{where}.restrict_h", "expected an object keyed by cycle index")
    for key, spec in rh.items():
        w = f"{where}.restrict_h.{key}"
        name = key if not key.isdigit() else f"h{key}"
        if key.isdigit() and not 1 <= int(key) <= len(D.cycles):
            raise ProblemFormatError(w, f"cycle index out of range 1..{len(D.cycles)}")
        restriction[name] = _parse_class(spec, ring, dims, w)
    chern_Z = (_parse_class(obj["chern_Z"], ring, dims, f"{where}.chern_Z")
               if "chern_Z" in obj else _chern_projective(ring))
    chern_cycles = (_parse_class(obj["chern_cycles"], ring, dims, f"{where}.chern_cycles")
                    if "chern_cycles" in obj else None)
    count = _int(obj.get("count", 1), f"{where}.count", minimum=1)
    try:
        base = Stratum(label, ring, restriction, chern_Z, chern_cycles, fill_zero=True)
    except ValueError as exc:
        raise ProblemFormatError(where, str(exc)) from None
    if count == 1:
        return [base]
    return [base.relabel(f"{label}#{i + 1}") for i in range(count)]


def parse_problem(obj: Any, where: str = "problem") -> Problem:
    D = parse_counting_data(obj, where)
    km = obj.get("km")
    if km is not None:
        km = _int(km, f"{where}.km", minimum=None)
    qs = obj.get("quasi_stable", True)
    if not isinstance(qs, bool):
        raise ProblemFormatError(f"{where}.quasi_stable", "expected true or false")
    raw_strata = obj.get("strata", [])
    if not isinstance(raw_strata, list):
        raise ProblemFormatError(f"{where}.strata", "expected a list")
    strata = []
    for i, s in enumerate(raw_strata):
        strata.extend(parse_stratum(s, D, f"{where}.strata[{i}]"))
    return Problem(D, km, qs, strata, obj)


def load_problem(path: Union[str, Path]) -> Problem:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if isinstance(obj, dict) and "problem" in obj and "source_dim" not in obj:
        obj = obj["problem"]  # a bundled fixture file
    return parse_problem(obj, where=path.name)
