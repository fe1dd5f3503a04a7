"""Command-line entry point: ``ampli <subcommand>``.

Exit codes: 0 success, 2 validation failure, 3 failed mathematical claim,
4 I/O error.  All numbers in JSON outputs are exact rational strings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ._parallel import pmap, resolve_jobs
from .adjoint import AdjointPoly, solve_adjoint_full
from .canonical import canonical_form, facet_residue_check, normalize, polygon_canonical_demo, simple_poles
from .errors import ClaimFailure, DegenerateError, ValidationError
from .exact import QMatrix, rat, rat_str
from .grassmann import Pluecker
from .membership import amplituhedron_map, cell_sample, membership_open
from .strata import (
    enumerate_strata,
    residual_count,
    stratum_counts,
    strata_of_type,
    vertex_point,
)
from .zinput import ZMatrix, degenerate_subsets, moment_curve_z, z_from_json

EXIT_OK, EXIT_VALIDATION, EXIT_CLAIM, EXIT_IO = 0, 2, 3, 4

PENTAGON = ((1, 0), (3, 0), (4, 2), (2, 4), (0, 2))


class StageFailure(Exception):
    def __init__(self, stage: str, code: int, message: str):
        super().__init__(f"stage {stage} failed: {message}")
        self.stage, self.code = stage, code


# ---------------------------------------------------------------------------
# I/O helpers


def _read_json(path):
    with open(path) as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(obj, out: str | Path | None = None) -> None:
    text = _dump(obj)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def load_z(path) -> ZMatrix:
    return z_from_json(_read_json(path))


def _parse_list(text: str) -> list[Fraction]:
    try:
        return [rat(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational list {text!r}") from exc


def load_point(data, z: ZMatrix) -> Pluecker:
    """A point of Gr(2,4): bare list of six coordinates, {"pluecker": [...]}, or {"x": 2 x n}."""
    if isinstance(data, dict) and "x" in data:
        try:
            x = QMatrix.from_rows([[rat(v) for v in row] for row in data["x"]])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad matrix entry: {exc}") from exc
        if x.shape != (2, z.n):
            raise ValidationError(f"x must be 2 x {z.n}")
        return amplituhedron_map(x, z)
    if isinstance(data, dict):
        data = data.get("pluecker")
    if not isinstance(data, list):
        raise ValidationError("point must be a list of six Pluecker coordinates")
    return Pluecker.from_json(data)


# ---------------------------------------------------------------------------
# stage bodies (shared by subcommands and the pipeline)


def check_z_report(z: ZMatrix) -> dict:
    tp = z.totally_positive
    bad = degenerate_subsets(z, first_only=True) if tp else []
    return {
        "n": z.n,
        "digest": z.digest(),
        "totally_positive": tp,
        "generic": tp and not bad,
        "degenerate_subsets": [list(s) for s in bad],
    }


def strata_report(n: int, z: ZMatrix | None = None, vertices: bool = False, jobs=None) -> dict:
    counts = stratum_counts(n)
    out = {
        "n": n,
        "counts": counts,
        "residual_count": residual_count(n),
        "strata": [info.to_json() for info in enumerate_strata(n)],
    }
    if vertices:
        if z is None:
            raise ValidationError("vertex coordinates need a Z matrix")
        verts = [v for t in ("0I", "0II", "0III", "0IV", "0V", "0VI") for v in strata_of_type(t, n)]
        coords = pmap(_VertexJob(z), verts, jobs)
        out["vertices"] = {str(v): c for v, c in zip(verts, coords)}
    return out


@dataclass(frozen=True)
class _VertexJob:
    z: ZMatrix

    def __call__(self, v):
        return vertex_point(v, self.z).to_json()


@dataclass(frozen=True)
class _FacetJob:
    form: object
    z: ZMatrix

    def __call__(self, i):
        return facet_residue_check(self.form, i, self.z)


def canonical_report(z: ZMatrix, a: AdjointPoly, facets: bool = True, jobs=None) -> dict:
    form = canonical_form(z, a)
    norm = normalize(form, z, jobs)
    out = {
        "n": z.n,
        "chart": form.chart.name,
        "scale": rat_str(norm.scale),
        "verified": norm.verified,
        "simple_poles": simple_poles(form),
        "residues": [r.to_json() for r in norm.reports],
    }
    if facets:
        reps = pmap(_FacetJob(norm.form, z), range(1, z.n + 1), jobs)
        out["facets"] = [r.to_json() for r in reps]
        out["facets_verified"] = all(r.ok for r in reps)
    return out


def _canonical_ok(rep: dict) -> bool:
    return rep["verified"] and rep["simple_poles"] and rep.get("facets_verified", True)


# ---------------------------------------------------------------------------
# the pipeline


@dataclass
class RunReport:
    z_digest: str
    n: int
    stratum_counts: dict = field(default_factory=dict)
    residual_count: int = 0
    adjoint_degree: int = 0
    kernel_dim: int = 0
    residues_verified: bool = False
    timings: dict = field(default_factory=dict)
    failed_stage: str | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "z_digest": self.z_digest,
            "n": self.n,
            "stratum_counts": self.stratum_counts,
            "residual_count": self.residual_count,
            "adjoint_degree": self.adjoint_degree,
            "kernel_dim": self.kernel_dim,
            "residues_verified": self.residues_verified,
        }
        if self.failed_stage:
            out["failed_stage"] = self.failed_stage
        if timings:
            # wall-clock seconds, kept out of default output so reruns are byte-identical
            out["timings"] = {k: f"{v:.3f}" for k, v in self.timings.items()}
        return out


def run_full_pipeline(z_path, out_dir, jobs=None, facets: bool = True, timings: bool = False) -> RunReport:
    """check-z, strata, adjoint, verify-canonical; raises StageFailure on the first failing stage."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    z = load_z(z_path)
    rep = RunReport(z.digest(), z.n)

    def finish(stage=None, code=EXIT_OK, msg=""):
        if stage:
            rep.failed_stage = stage
        (out / "report.json").write_text(_dump(rep.to_json(timings)))
        if stage:
            raise StageFailure(stage, code, msg)
        return rep

    t0 = time.perf_counter()
    _emit(z.to_json(), out / "z.json")
    check = check_z_report(z)
    rep.timings["check-z"] = time.perf_counter() - t0
    if not check["totally_positive"]:
        return finish("check-z", EXIT_VALIDATION, "Z is not totally positive")
    if not check["generic"]:
        return finish("check-z", EXIT_VALIDATION, f"Z is not generic: {check['degenerate_subsets']}")

    t0 = time.perf_counter()
    srep = strata_report(z.n, z, vertices=True, jobs=jobs)
    _emit(srep, out / "strata.json")
    rep.stratum_counts, rep.residual_count = srep["counts"], srep["residual_count"]
    rep.timings["strata"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        res = solve_adjoint_full(z)
    except ClaimFailure as exc:
        return finish("adjoint", EXIT_CLAIM, str(exc))
    rep.adjoint_degree, rep.kernel_dim = res.adjoint.degree, res.system.kernel_dim
    _emit(res.adjoint.to_json(), out / "adjoint.json")
    rep.timings["adjoint"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    crep = canonical_report(z, res.adjoint, facets=facets, jobs=jobs)
    _emit(crep, out / "residues.json")
    rep.residues_verified = crep["verified"]
    rep.timings["verify-canonical"] = time.perf_counter() - t0
    if not _canonical_ok(crep):
        return finish("verify-canonical", EXIT_CLAIM, "canonical-form checks failed")
    return finish()


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen_z(args) -> int:
    nodes = _parse_list(args.nodes) if args.nodes else list(range(1, args.n + 1))
    if args.n is not None and len(nodes) != args.n:
        raise ValidationError(f"--n {args.n} but {len(nodes)} nodes given")
    _emit(moment_curve_z(nodes).to_json(), args.out)
    return EXIT_OK


def cmd_check_z(args) -> int:
    rep = check_z_report(load_z(args.z))
    _emit(rep)
    return EXIT_OK if rep["generic"] else EXIT_VALIDATION


def cmd_membership(args) -> int:
    z = load_z(args.z)
    ab = load_point(_read_json(args.point), z)
    _emit(membership_open(ab.coords, z).to_json())
    return EXIT_OK


def cmd_sample(args) -> int:
    z = load_z(args.z) if args.z else None
    n = z.n if z else args.n
    if n is None:
        raise ValidationError("give --n or --z")
    idx = [i for i in (args.i, args.j) if i is not None]
    s = cell_sample(args.tag, idx, _parse_list(args.params), n)
    out = s.to_json()
    if z is not None:
        ab = amplituhedron_map(s.x, z)
        out["image"] = ab.to_json()
        out["verdict"] = membership_open(ab.coords, z).to_json()
    _emit(out)
    return EXIT_OK


def cmd_strata(args) -> int:
    z = load_z(args.z) if args.z else None
    n = z.n if z else args.n
    if n is None:
        raise ValidationError("give --n or --z")
    _emit(strata_report(n, z, args.vertices, args.jobs), args.report)
    return EXIT_OK


def cmd_adjoint(args) -> int:
    res = solve_adjoint_full(load_z(args.z))
    _emit(res.adjoint.to_json(), args.out)
    return EXIT_OK


def cmd_verify_canonical(args) -> int:
    z = load_z(args.z)
    a = AdjointPoly.from_json(_read_json(args.adjoint)) if args.adjoint else solve_adjoint_full(z).adjoint
    if a.degree != z.n - 4:
        raise ValidationError(f"adjoint degree {a.degree} does not match n - 4 = {z.n - 4}")
    rep = canonical_report(z, a, facets=not args.no_facets, jobs=args.jobs)
    _emit(rep, args.report)
    return EXIT_OK if _canonical_ok(rep) else EXIT_CLAIM


def cmd_pipeline(args) -> int:
    try:
        rep = run_full_pipeline(args.z, args.out_dir, args.jobs, not args.no_facets, args.timings)
    except StageFailure as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    _emit(rep.to_json(args.timings))
    return EXIT_OK


def cmd_pentagon_demo(args) -> int:
    verts = PENTAGON
    if args.vertices:
        vals = _parse_list(args.vertices)
        if len(vals) % 2:
            raise ValidationError("vertices need an even number of coordinates")
        verts = tuple(zip(vals[0::2], vals[1::2]))
    pc = polygon_canonical_demo(verts)
    out = {
        "vertices": [[rat_str(x), rat_str(y)] for x, y in verts],
        "scale": rat_str(pc.scale),
        "numerator": pc.numerator.format(["x", "y"]),
        "edges": [
            {
                "line": [rat_str(c) for c in e.edge],
                "variable": e.variable,
                "residue_form": e.form.format(e.variable),
                "vertex_residues": [{"vertex": [rat_str(x), rat_str(y)], "residue": rat_str(r)}
                                    for (x, y), r in e.vertex_residues],
            }
            for e in pc.edges
        ],
        "verified": pc.verified,
    }
    _emit(out, args.out)
    return EXIT_OK if pc.verified else EXIT_CLAIM


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ampli", description="Exact checks for the tree amplituhedron in Gr(2,4).")
    ap.add_argument("--jobs", type=int, default=None, help="worker cap (AMPLI_JOBS overrides)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-z", help="moment-curve Z")
    p.add_argument("--n", type=int)
    p.add_argument("--nodes", help="comma-separated increasing positive rationals")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_z)

    p = sub.add_parser("check-z", help="total positivity and genericity")
    p.add_argument("z")
    p.set_defaults(func=cmd_check_z)

    p = sub.add_parser("membership", help="sign-flip membership verdict")
    p.add_argument("--z", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("sample", help="positroid-cell witness matrix")
    p.add_argument("--tag", required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--params", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--z")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("strata", help="boundary stratification report")
    p.add_argument("--z")
    p.add_argument("--n", type=int)
    p.add_argument("--report")
    p.add_argument("--vertices", action="store_true", help="include exact vertex coordinates")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("adjoint", help="solve for the adjoint")
    p.add_argument("--z", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("verify-canonical", help="residues of the canonical form")
    p.add_argument("--z", required=True)
    p.add_argument("--adjoint")
    p.add_argument("--report")
    p.add_argument("--no-facets", action="store_true")
    p.set_defaults(func=cmd_verify_canonical)

    p = sub.add_parser("pipeline", help="run every stage and write JSON artifacts")
    p.add_argument("--z", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-facets", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("pentagon-demo", help="planar polygon adjoint and residues")
    p.add_argument("--vertices", help="x1,y1,x2,y2,... in counterclockwise order")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pentagon_demo)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.jobs = resolve_jobs(args.jobs)
        return args.func(args)
    except (ValidationError, DegenerateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ClaimFailure as exc:
        print(f"claim failed: {exc}", file=sys.stderr)
        return EXIT_CLAIM
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
