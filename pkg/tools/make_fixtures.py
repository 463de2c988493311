"""Regenerate the bundled fixture files under src/qmcount/fixtures/.

Run from the repository root: python3 tools/make_fixtures.py
"""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "qmcount" / "fixtures"

Z = {"factor_exponents": [1], "coeff": 1}


def cycles(*pairs):
    return [{"source_dim": a, "target_codim": b} for a, b in pairs]


def point(label, count=1):
    s = {"label": label, "dims": []}
    if count > 1:
        s["count"] = count
    return s


def proj(label, m, h=(), count=1):
    s = {"label": label, "dims": [m], "restrict_H": Z}
    if h:
        s["restrict_h"] = {str(i): Z for i in h}
    if count > 1:
        s["count"] = count
    return s


def fixture(name, description, k, n, d, cyc, km, strata=(), quasi_stable=True, **expected):
    problem = {"source_dim": k, "target_dim": n, "degree": d, "cycles": cyc, "km": km,
               "quasi_stable": quasi_stable, "strata": list(strata)}
    return name, {"name": name, "description": description, "problem": problem, "expected": expected}


def all_fixtures():
    yield fixture("lines_p2_no_maps", "Lines in P^2 through two fixed points with a running point on a third; no honest map, two freckle points.",
                  1, 2, 1, cycles((0, 2), (0, 2), (1, 2)), 0,
                  [point("freckle at c1"), point("freckle at c2")], qm=2, contributions=[1, 1], residual=0)
    yield fixture("lines_p2_one_map", "Lines in P^2: two points to lines, one to a point, running point to a point.",
                  1, 2, 1, cycles((0, 1), (0, 1), (0, 2), (1, 2)), 1,
                  [point("freckle at c3")], qm=2, contributions=[1], residual=0)
    yield fixture("lines_p2_three_freckles", "Lines in P^2: three points to lines, two running points to points.",
                  1, 2, 1, cycles((0, 1), (0, 1), (0, 1), (1, 2), (1, 2)), 1,
                  [point("freckle at c1"), point("freckle at c2"), point("freckle at c3")],
                  qm=4, contributions=[1, 1, 1], residual=0)
    yield fixture("lines_p3_running_point", "Lines in P^3 through three fixed lines and a running point on a line: no proper quasimaps.",
                  1, 3, 1, cycles((0, 2), (0, 2), (0, 2), (1, 2)), 2, [], qm=2, contributions=[], residual=0)
    yield fixture("planes_p2_four_points", "Degree-1 quasimaps P^2 -> P^2 with four fixed points to points.",
                  2, 2, 1, cycles((0, 2), (0, 2), (0, 2), (0, 2)), 1, [], qm=1, contributions=[], residual=0)
    yield fixture("planes_p3_fixed_points", "Degree-1 quasimaps P^2 -> P^3: fixed points only plus a running plane.",
                  2, 3, 1, cycles((0, 3), (0, 3), (0, 3), (0, 2), (2, 2)), 1, [], qm=1, contributions=[], residual=0)
    yield fixture("planes_p3_running_point", "Degree-1 quasimaps P^2 -> P^3 with a freely running point to a point.",
                  2, 3, 1, cycles((0, 3), (0, 3), (0, 2), (0, 2), (2, 3)), 1,
                  [point("freckle at c3"), point("freckle at c4")], qm=3, contributions=[1, 1], residual=0)
    for N in range(2, 11):
        z = point("freckle family") if N == 2 else proj("freckle family", N - 2)
        yield fixture(f"lines_p{N}_family", f"Lines in P^{N}: two points to hyperplanes, one to a point, running point to a point.",
                      1, N, 1, cycles((0, 1), (0, 1), (0, N), (1, N)), 1, [z],
                      qm=N, contributions=[N - 1], residual=0)
    for N, N1, N2, N3, K in [(4, 1, 3, 3, 3), (5, 2, 3, 3, 4), (6, 1, 4, 4, 5), (6, 2, 3, 4, 5), (7, 2, 5, 5, 4)]:
        assert N1 + N2 + N3 + K == 2 * N + 2 and K < N and N2 + N3 > N
        d2, d3 = N - N1 - N3, N - N1 - N2
        assert d2 >= 0 and d3 >= 0
        strata = [point("Z2") if d2 == 0 else proj("Z2", d2), point("Z3") if d3 == 0 else proj("Z3", d3)]
        yield fixture(f"lines_p{N}_hyperplanes_{N1}_{N2}_{N3}_running_{K}",
                      f"Lines in P^{N}: fixed points to codim {N1}, {N2}, {N3} subspaces, running point to codim {K}.",
                      1, N, 1, cycles((0, N1), (0, N2), (0, N3), (1, K)), N1, strata,
                      qm=K, contributions=[d2 + 1, d3 + 1], residual=0)
    yield fixture("conics_p2_quasi_stable", "Conics in P^2: three points to points, two running points to points.",
                  1, 2, 2, cycles((0, 2), (0, 2), (0, 2), (1, 2), (1, 2)), 1,
                  [point("two freckles at fixed points", 6), proj("two freckles, one running", 1, count=3)],
                  qm=16, contributions=[1] * 6 + [3] * 3, residual=0, pqm=15)
    yield fixture("lines_p3_colliding_running_points", "Lines in P^3: three points to planes, two running points to points; strata intersect.",
                  1, 3, 1, cycles((0, 1), (0, 1), (0, 1), (1, 3), (1, 3)), 1,
                  [proj("Z2", 1), proj("Z3", 1), proj("Z4", 1), proj("Zr", 1, h=(4, 5))], quasi_stable=False,
                  qm=9, contributions=[3, 3, 3, 5], naive_sum=14, residual=8, status="NON-QUASISTABLE")
    yield fixture("conics_p2_three_running_points", "Conics in P^2: points to a line and two points, three running points to points; strata intersect.",
                  1, 2, 2, cycles((0, 1), (0, 2), (0, 2), (1, 2), (1, 2), (1, 2)), 2,
                  [proj("A", 1, h=(4, 5, 6)), proj("B", 2, count=2), proj("C", 1),
                   point("D", 6), point("E", 6), proj("F", 1, count=3)], quasi_stable=False,
                  qm=64, contributions=[10, 10, 10, 4] + [1] * 12 + [4] * 3, naive_sum=58, residual=62,
                  status="NON-QUASISTABLE")
    yield fixture("planes_p3_points_on_lines_a", "Degree-1 quasimaps P^2 -> P^3: three points to points, two points on lines to lines.",
                  2, 3, 1, cycles((0, 3), (0, 3), (0, 3), (1, 2), (1, 2)), 1,
                  [point("scar point", 3)], qm=4, contributions=[1, 1, 1], residual=0)
    yield fixture("planes_p3_points_on_lines_b", "Degree-1 quasimaps P^2 -> P^3: one running point on a line to a point.",
                  2, 3, 1, cycles((0, 3), (0, 3), (0, 2), (1, 3), (1, 2)), 1,
                  [proj("degenerate scar", 1), point("scar point", 2)], qm=6, contributions=[3, 1, 1], residual=0)
    yield fixture("planes_p3_points_on_lines_c", "Degree-1 quasimaps P^2 -> P^3: two running points on lines to points.",
                  2, 3, 1, cycles((0, 2), (0, 3), (0, 2), (1, 3), (1, 3)), None,
                  [point("freckle"), point("scar c1 c3"), proj("degenerate scar", 1, count=2)],
                  qm=9, contributions=[1, 1, 3, 3], km_recovered=1)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    names = []
    for name, fx in all_fixtures():
        (OUT / f"{name}.json").write_text(json.dumps(fx, indent=2) + "\n")
        names.append(name)
    print(f"wrote {len(names)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
