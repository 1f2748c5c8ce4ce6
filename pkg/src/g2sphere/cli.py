"""Batch command-line surface.

Subcommands: verify, j, f, basis, polys, orbit-dim.  Exit codes: 0 all
checks pass, 1 at least one check failed, 2 usage/configuration error.

Output is deterministic for a fixed (flags, seed) pair: sampling uses
numpy's seeded PCG64 generator and JSON is emitted with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .charts import chart_contains, frame_at, solve_x_of_y
from .g2_algebra import real_basis, real_ip, root_basis, span_membership
from .j_sphere import j_apply, j_matrix, nijenhuis_sphere, standard_block_j, theta
from .octonion import Octonion, conj_by_point, oct_mul, oct_norm
from .orbit_analysis import dimension_report, random_g2
from .poly_engine import extract_matrix_elements, table_to_json
from .samelson import (Moduli, corrupted_j_operator, j_from_subalgebra,
                       j_operator, nijenhuis_algebra, samelson_generators)
from .scalars import QuadScalar
from .sphere_map import f_matrix, f_pullback, f_pullback_regularized, f_pushforward


class ConfigError(Exception):
    pass


# b = 2/sqrt3 is (2/3) sqrt3; the orthogonal-structure modulus
_B_ORTH = QuadScalar(0, 0, Fraction(2, 3))

DEFAULT_MODULI = (
    Moduli.from_ab(1, 1),
    Moduli.from_ab(3, 4),
    Moduli(0, _B_ORTH),
)


def _parse_scalar(token: str):
    token = token.strip()
    if token in ("2/sqrt3", "2/sqrt(3)"):
        return _B_ORTH
    if token in ("-2/sqrt3", "-2/sqrt(3)"):
        return -_B_ORTH
    try:
        return Fraction(token)
    except ValueError:
        try:
            return float(token)
        except ValueError:
            raise ConfigError(f"cannot parse scalar {token!r}")


def _parse_moduli(pairs):
    if not pairs:
        return list(DEFAULT_MODULI)
    out = []
    for a_tok, b_tok in pairs:
        b = _parse_scalar(b_tok)
        if a_tok.strip() in ("inf", "oo"):
            out.append(Moduli(0, b))
        else:
            out.append(Moduli.from_ab(_parse_scalar(a_tok), b))
    return out


def _parse_tols(items):
    tols = {}
    for item in items or ():
        name, _, val = item.partition("=")
        if not val:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        v = float(val)
        if v <= 0:
            raise ConfigError("tolerances must be positive")
        tols[name] = v
    return tols


def _random_unit(rng, n=7):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _random_tangent(rng, x):
    v = rng.standard_normal(7)
    v -= (v @ x) * x
    return v / np.linalg.norm(v)


def _random_chart_point(rng, i=1):
    while True:
        y = _random_unit(rng)
        if y[i - 1] > -0.3:  # margin inside the chart
            return y


class Report:
    def __init__(self):
        self.checks = []

    def add(self, name: str, residual: float, tol: float):
        self.checks.append({
            "check": name,
            "residual": float(residual),
            "tol": float(tol),
            "passed": bool(residual <= tol),
        })

    def add_bool(self, name: str, ok: bool):
        self.checks.append({
            "check": name,
            "residual": 0.0 if ok else 1.0,
            "tol": 0.5,
            "passed": bool(ok),
        })

    @property
    def all_passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "checks": sorted(self.checks, key=lambda c: c["check"]),
            "passed": self.all_passed,
            "failed": sorted(c["check"] for c in self.checks if not c["passed"]),
        }


def _suite_octonion(rep: Report, rng, samples: int, tol):
    worst_norm = 0.0
    worst_alt = 0.0
    for _ in range(samples):
        u = Octonion(rng.standard_normal(8))
        v = Octonion(rng.standard_normal(8))
        w = oct_mul(u, v)
        worst_norm = max(worst_norm,
                         abs(oct_norm(w) - oct_norm(u) * oct_norm(v)))
        lhs = oct_mul(u, oct_mul(u, v)).to_floats()
        rhs = oct_mul(oct_mul(u, u), v).to_floats()
        worst_alt = max(worst_alt, float(np.max(np.abs(lhs - rhs))))
    rep.add("octonion.norm_multiplicative", worst_norm, tol("octonion", 1e-10))
    rep.add("octonion.alternative", worst_alt, tol("octonion", 1e-10))
    worst = 0.0
    for _ in range(max(3, samples // 4)):
        x = _random_unit(rng)
        F = f_matrix(x)
        u = Octonion(np.concatenate([[0.0], rng.standard_normal(7)]))
        direct = conj_by_point(x, u).to_floats()[1:]
        worst = max(worst, float(np.max(np.abs(F @ u.to_floats()[1:] - direct))))
    rep.add("octonion.conjugation_matches_matrix", worst, tol("octonion", 1e-9))


def _suite_algebra(rep: Report, moduli_list, tol):
    basis = real_basis()
    G = np.array([[real_ip(A, B) for B in basis] for A in basis])
    rep.add("algebra.basis_orthonormal",
            float(np.max(np.abs(G - np.eye(14)))), tol("algebra", 1e-12))
    worst = 0.0
    for m in moduli_list:
        gens = samelson_generators(m)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                W = gens[i] @ gens[j] - gens[j] @ gens[i]
                _, res = span_membership(W, gens)
                worst = max(worst, res)
    rep.add("algebra.subalgebra_closed", worst, tol("algebra", 1e-9))
    gens = samelson_generators(moduli_list[0])
    stack = np.stack([g.reshape(-1) for g in gens]
                     + [g.conj().reshape(-1) for g in gens])
    rep.add_bool("algebra.direct_sum_rank_14",
                 np.linalg.matrix_rank(stack, tol=1e-9) == 14)


def _suite_samelson(rep: Report, moduli_list, tol):
    worst_sq = 0.0
    worst_agree = 0.0
    worst_nij = 0.0
    basis = real_basis()
    for m in moduli_list:
        J = j_operator(m).as_float()
        worst_sq = max(worst_sq, float(np.max(np.abs(J @ J + np.eye(14)))))
        J2 = j_from_subalgebra(m).as_float()
        worst_agree = max(worst_agree, float(np.max(np.abs(J - J2))))
        for p in range(0, 14, 3):
            for q in range(p + 1, 14, 4):
                N = nijenhuis_algebra(m, basis[p], basis[q])
                worst_nij = max(worst_nij, float(np.max(np.abs(N))))
    rep.add("samelson.square_is_minus_id", worst_sq, tol("samelson", 1e-10))
    rep.add("samelson.block_matches_subalgebra", worst_agree,
            tol("samelson", 1e-9))
    rep.add("samelson.nijenhuis_zero", worst_nij, tol("nijenhuis_algebra", 1e-10))


def _suite_sphere_map(rep: Report, rng, samples: int, tol):
    worst = {"so7": 0.0, "cube": 0.0, "axis": 0.0, "conformal": 0.0,
             "pullback": 0.0}
    for _ in range(samples):
        x = _random_unit(rng)
        F = f_matrix(x)
        worst["so7"] = max(worst["so7"],
                           float(np.max(np.abs(F.T @ F - np.eye(7)))))
        worst["cube"] = max(worst["cube"],
                            float(np.max(np.abs(F @ F @ F - np.eye(7)))))
        worst["axis"] = max(worst["axis"], float(np.max(np.abs(F @ x - x))))
        xi = _random_tangent(rng, x)
        eta = _random_tangent(rng, x)
        Wxi = F.T @ f_pushforward(x, xi)
        Weta = F.T @ f_pushforward(x, eta)
        worst["conformal"] = max(worst["conformal"],
                                 abs(real_ip(Wxi, Weta) - 9.0 * (xi @ eta)))
        A = f_pushforward(x, xi)
        worst["pullback"] = max(
            worst["pullback"],
            float(np.max(np.abs(f_pullback(x, A)
                                - f_pullback_regularized(x, A)))))
    rep.add("sphere_map.special_orthogonal", worst["so7"], tol("f", 1e-10))
    rep.add("sphere_map.order_three", worst["cube"], tol("f", 1e-10))
    rep.add("sphere_map.fixes_axis", worst["axis"], tol("f", 1e-10))
    rep.add("sphere_map.conformal_factor_nine", worst["conformal"],
            tol("f", 1e-9))
    rep.add("sphere_map.pullback_matches_limit", worst["pullback"],
            tol("f", 1e-7))


def _suite_charts(rep: Report, rng, samples: int, tol):
    worst_frame = 0.0
    covered = True
    for _ in range(samples):
        y = _random_unit(rng)
        covered = covered and any(chart_contains(i, y) for i in range(1, 8))
        i = next(i for i in range(1, 8) if y[i - 1] > -0.3)
        fr = frame_at(i, y)
        B = fr.B
        worst_frame = max(
            worst_frame,
            float(np.max(np.abs(B.T @ B - np.eye(7)))),
            float(np.max(np.abs(B[:, i - 1] - y))))
    rep.add("charts.frames", worst_frame, tol("charts", 1e-10))
    rep.add_bool("charts.cover", covered)


def _suite_sphere_tensor(rep: Report, rng, samples: int, moduli_list, tol):
    m0 = moduli_list[0]
    e1 = np.eye(7)[0]
    block = j_matrix(m0, 1, e1).J
    rep.add("tensor.standard_block_at_pole",
            float(np.max(np.abs(block - standard_block_j()))),
            tol("tensor", 1e-12))
    worst_sq = 0.0
    worst_orth = 0.0
    worst_mod = 0.0
    jops = [j_operator(m) for m in moduli_list]
    for _ in range(samples):
        y = _random_chart_point(rng)
        mats = [j_matrix(m, 1, y, jop=jop).J for m, jop in zip(moduli_list, jops)]
        J = mats[0]
        worst_sq = max(worst_sq, float(np.max(np.abs(J @ J + np.eye(6)))))
        worst_orth = max(worst_orth,
                         float(np.max(np.abs(J.T @ J - np.eye(6)))))
        for other in mats[1:]:
            worst_mod = max(worst_mod, float(np.max(np.abs(J - other))))
    rep.add("tensor.square_is_minus_id", worst_sq, tol("tensor", 1e-10))
    rep.add("tensor.orthogonal", worst_orth, tol("tensor", 1e-10))
    rep.add("tensor.moduli_independent", worst_mod, tol("moduli", 1e-9))
    y1 = _random_chart_point(rng)
    y2 = _random_chart_point(rng)
    T_id = theta(1, y1, y1, m0)
    T12 = theta(1, y1, y2, m0)
    T21 = theta(1, y2, y1, m0)
    rep.add("tensor.theta_identity", float(np.max(np.abs(T_id - np.eye(6)))),
            tol("theta", 1e-9))
    rep.add("tensor.theta_inverse", float(np.max(np.abs(T12 @ T21 - np.eye(6)))),
            tol("theta", 1e-9))
    worst_nij = 0.0
    for _ in range(max(2, samples // 8)):
        y = _random_chart_point(rng)
        p, q = rng.choice(6, size=2, replace=False)
        n = nijenhuis_sphere(1, y, m0, (int(p), int(q)))
        worst_nij = max(worst_nij, float(np.max(np.abs(n))))
    rep.add("tensor.nijenhuis", worst_nij, tol("nijenhuis", 1e-6))


def _suite_orbit(rep: Report, rng, samples: int, moduli_list, tol):
    m0 = moduli_list[0]
    at_base = dimension_report(m0, np.eye(7))
    rep.add_bool("orbit.dims_at_base_point",
                 at_base["s"]["dim"] == 3 and at_base["s_conj"]["dim"] == 3)
    ok = True
    for _ in range(max(2, samples // 4)):
        g = random_g2(rng, scale=0.5)
        r = dimension_report(m0, g)
        ok = ok and r["s"]["dim"] == 3 and r["s_conj"]["dim"] == 3
    rep.add_bool("orbit.dims_at_generic_points", ok)


def cmd_verify(args) -> int:
    moduli_list = _parse_moduli(args.moduli)
    tols = _parse_tols(args.tol)

    def tol(name, default):
        return tols.get(name, default)

    rng = np.random.default_rng(args.seed)
    rep = Report()
    _suite_octonion(rep, rng, args.samples, tol)
    _suite_algebra(rep, moduli_list, tol)
    _suite_samelson(rep, moduli_list, tol)
    _suite_sphere_map(rep, rng, args.samples, tol)
    _suite_charts(rep, rng, args.samples, tol)
    _suite_sphere_tensor(rep, rng, max(4, args.samples // 2), moduli_list, tol)
    _suite_orbit(rep, rng, args.samples, moduli_list, tol)
    _emit(rep.to_json(), args)
    return 0 if rep.all_passed else 1


def _point(args) -> np.ndarray:
    y = np.asarray([float(v) for v in args.point], dtype=float)
    if y.shape != (7,):
        raise ConfigError("--point expects 7 coordinates")
    n = np.linalg.norm(y)
    if abs(n - 1.0) > 1e-9:
        if not args.normalize:
            raise ConfigError("point is not unit (pass --normalize to rescale)")
        y = y / n
    return y


def cmd_j(args) -> int:
    moduli = _parse_moduli(args.moduli)[0]
    y = _point(args)
    sj = j_matrix(moduli, args.chart, y)
    J = sj.J
    out = {
        "chart": args.chart,
        "point": y.tolist(),
        "matrix": J.tolist(),
        "frame": frame_at(args.chart, y).B.tolist(),
        "residuals": {
            "square_plus_id": float(np.max(np.abs(J @ J + np.eye(6)))),
            "orthogonality": float(np.max(np.abs(J.T @ J - np.eye(6)))),
        },
    }
    _emit(out, args)
    return 0


def cmd_f(args) -> int:
    x = _point(args)
    F = f_matrix(x)
    out = {
        "point": x.tolist(),
        "matrix": F.tolist(),
        "diagnostics": {
            "det": float(np.linalg.det(F)),
            "order_three": float(np.max(np.abs(F @ F @ F - np.eye(7)))),
            "fixes_point": float(np.max(np.abs(F @ x - x))),
        },
    }
    _emit(out, args)
    return 0


def cmd_basis(args) -> int:
    moduli = _parse_moduli(args.moduli)[0]
    if moduli.is_infinite_a():
        raise ConfigError("basis emission needs a finite first modulus")
    rb = root_basis(1.0 / moduli.alpha_float, moduli.b_float)
    named = rb.named()
    out = {"names": sorted(named),
           "matrices": {name: {"re": M.real.tolist(), "im": M.imag.tolist()}
                        for name, M in named.items()}}
    _emit(out, args)
    return 0


def cmd_polys(args) -> int:
    moduli = _parse_moduli(args.moduli)[0]
    tables = extract_matrix_elements(moduli)
    _emit(table_to_json(tables), args)
    return 0


def cmd_orbit_dim(args) -> int:
    moduli = _parse_moduli(args.moduli)[0]
    rng = np.random.default_rng(args.seed)
    rows = [{"sample": 0, "group_element": "identity",
             **dimension_report(moduli, np.eye(7))}]
    for k in range(1, args.samples):
        g = random_g2(rng, scale=0.5)
        rows.append({"sample": k, "group_element": "random",
                     **dimension_report(moduli, g)})
    _emit({"rows": rows}, args)
    return 0


def _emit(data: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(data, indent=2, sort_keys=True)
    else:
        text = _pretty(data)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _pretty(data, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(data, list):
        if data and all(isinstance(r, list) for r in data) \
                and all(isinstance(v, (int, float)) for r in data for v in r):
            w = 11
            return "\n".join(pad + " ".join(f"{v: {w}.7f}" for v in row)
                             for row in data)
        return "\n".join(_pretty(v, indent) if isinstance(v, (dict, list))
                         else f"{pad}- {v}" for v in data)
    return f"{pad}{data}"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="g2sphere",
        description="Verification and emission tools for the sphere-tensor "
                    "construction from octonion inner automorphisms.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, point=False, chart=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=20)
        p.add_argument("--moduli", nargs=2, action="append",
                       metavar=("A", "B"),
                       help="modulus pair; A may be 'inf', B may be "
                            "'2/sqrt3' (repeatable)")
        p.add_argument("--tol", action="append", metavar="NAME=VAL")
        p.add_argument("--format", choices=("json", "pretty"), default="json")
        p.add_argument("--exact", action="store_true")
        p.add_argument("--out", default=None)
        if point:
            p.add_argument("--point", nargs=7, required=True)
            p.add_argument("--normalize", action="store_true")
        if chart:
            p.add_argument("--chart", type=int, default=1)

    common(sub.add_parser("verify", help="run all check suites"))
    common(sub.add_parser("j", help="6x6 tensor matrix at a point"),
           point=True, chart=True)
    common(sub.add_parser("f", help="rotation matrix f(x)"), point=True)
    common(sub.add_parser("basis", help="the 14 root-basis matrices"))
    common(sub.add_parser("polys", help="exact polynomial tables"))
    common(sub.add_parser("orbit-dim", help="intersection dimensions along "
                                            "the orbit"))
    return ap


_DISPATCH = {
    "verify": cmd_verify,
    "j": cmd_j,
    "f": cmd_f,
    "basis": cmd_basis,
    "polys": cmd_polys,
    "orbit-dim": cmd_orbit_dim,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
