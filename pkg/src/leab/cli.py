"""Command-line driver: refinement runs, shape orbits, envelope verification, SVG figures."""

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

from .analysis import BoundsReport, verify_bounds, write_stats_csv
from .errors import (
    DegenerateShapeError,
    DegenerateTriangleError,
    InsufficientLevelsError,
    MeshFormatError,
)
from .mesh import find_hanging_nodes, load_mesh, refine_global, save_mesh
from .shape_space import ShapePoint, Word, gamma_residual, orbit
from .svg import mesh_svg, shape_space_svg

MAX_STEPS = 24
MAX_ELEMENTS = 1 << 24
_SIGMA_CONSTRAINTS = (
    ("Re(z) > 0", lambda z, tol: z.real > -tol),
    ("Re(z) <= 1/2", lambda z, tol: z.real <= 0.5 + tol),
    ("Im(z) > 0", lambda z, tol: z.imag > -tol),
    ("|z - 1| <= 1", lambda z, tol: abs(z - 1.0) <= 1.0 + tol),
)


@dataclass(frozen=True)
class RunConfig:
    """Parsed command-line invocation."""

    command: str
    input: Path | None = None
    output: Path | None = None
    steps: int = 0
    method: str = "leab"
    z: complex | None = None
    word: str = ""
    tol: float | None = None
    points: Path | None = None
    seed: int = 0


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' with decimal literals and no whitespace."""
    s = text.strip()
    if not s or " " in s:
        raise ValueError(f"invalid complex literal {text!r}")
    try:
        return complex(s.replace("i", "j").replace("I", "j"))
    except ValueError as exc:
        raise ValueError(f"invalid complex literal {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leab",
        description="Altitude bisection of triangle meshes and its shape-space dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    refine = sub.add_parser("refine", help="refine a mesh and write per-level files plus stats")
    refine.add_argument("--input", type=Path, required=True, help="seed mesh JSON file")
    refine.add_argument("--output", type=Path, required=True, help="output directory")
    refine.add_argument("--steps", type=int, default=1, help="number of global refinement steps")
    refine.add_argument("--method", choices=("leab", "leb"), default="leab")
    refine.add_argument("--tol", type=float, default=None, help="hanging-node tolerance override")

    orbit_p = sub.add_parser("orbit", help="iterate the child-shape maps from a start point")
    orbit_p.add_argument("--z", type=parse_complex, required=True, metavar='"a+bi"')
    orbit_p.add_argument("--word", required=True, help="letters L and R")
    orbit_p.add_argument("--output", type=Path, default=None, help="directory for orbit.txt and orbit.svg")
    orbit_p.add_argument("--tol", type=float, default=None, help="membership tolerance override")

    verify = sub.add_parser("verify", help="check the two-sided diameter envelope")
    verify.add_argument("--input", type=Path, required=True,
                        help="seed mesh file, or a directory of level_*.json files to recheck")
    verify.add_argument("--output", type=Path, default=None, help="directory for bounds.txt and bounds.csv")
    verify.add_argument("--steps", type=int, default=6, help="refinement depth in seed mode")

    plot = sub.add_parser("plot", help="emit SVG figures")
    plot.add_argument("--input", type=Path, default=None, help="mesh JSON to draw (mesh figure)")
    plot.add_argument("--points", type=Path, default=None, help="points file for the shape figure")
    plot.add_argument("--output", type=Path, required=True, help="output directory")
    return parser


def _require_capacity(n_triangles: int, steps: int) -> None:
    if steps > MAX_STEPS:
        raise ValueError(f"steps capped at {MAX_STEPS}, got {steps}")
    if n_triangles << max(steps, 0) > MAX_ELEMENTS:
        raise ValueError(f"run would produce {n_triangles << steps} elements; cap is {MAX_ELEMENTS}")


def cmd_refine(cfg: RunConfig) -> int:
    mesh = load_mesh(cfg.input)
    _require_capacity(len(mesh.triangles), cfg.steps)
    levels = refine_global(mesh, cfg.steps, cfg.method)
    cfg.output.mkdir(parents=True, exist_ok=True)
    for level in levels:
        save_mesh(level, cfg.output / f"level_{level.level:03d}.json")
    write_stats_csv(levels, cfg.output / "stats.csv")
    final = levels[-1]
    for vi, tid, _ in find_hanging_nodes(final, cfg.tol):
        p = final.vertices[vi]
        print(
            f"warning: hanging node at ({p.x:.9g}, {p.y:.9g}): "
            f"vertex {vi} lies inside an edge of triangle {tid}",
            file=sys.stderr,
        )
    print(f"wrote levels 0..{cfg.steps} ({len(final.triangles)} elements at the last level) to {cfg.output}")
    return 0


def cmd_orbit(cfg: RunConfig) -> int:
    tol = cfg.tol if cfg.tol is not None else 1e-12
    z = cfg.z
    for name, check in _SIGMA_CONSTRAINTS:
        if not check(z, tol):
            raise ValueError(f"start point {cfg.z} violates {name}")
    trace = orbit(ShapePoint(z.real, z.imag), Word.parse(cfg.word))
    entries = [("-", trace.start, gamma_residual(trace.start.z))]
    entries += [(letter, point, res) for (letter, point), res in zip(trace.steps, trace.residuals)]
    lines = [f"{'step':>4} {'letter':>6} {'re':>22} {'im':>22} {'residual':>12}"]
    for i, (letter, point, res) in enumerate(entries):
        lines.append(f"{i:>4} {letter:>6} {point.re:>22.16g} {point.im:>22.16g} {res:>12.3e}")
    table = "\n".join(lines)
    print(table)
    if cfg.output is not None:
        cfg.output.mkdir(parents=True, exist_ok=True)
        (cfg.output / "orbit.txt").write_text(table + "\n", encoding="utf-8")
        labeled = [(trace.start.z, "z0")]
        labeled += [(point.z, f"z{i + 1}") for i, (_, point) in enumerate(trace.steps)]
        (cfg.output / "orbit.svg").write_text(shape_space_svg(labeled), encoding="utf-8")
    return 0


def _render_report(report: BoundsReport) -> str:
    lines = [
        f"base minimum angle: {report.alpha0_deg:.12g} deg",
        f"level-1 minimum angle: {report.alpha1_deg:.12g} deg",
        f"angle halving (level-1 min >= base min / 2): {'pass' if report.angle_halving_passed else 'FAIL'}",
        f"{'k':>3} {'lower':>14} {'min seen':>14} {'max seen':>14} {'upper':>14}  result",
    ]
    for row in report.rows:
        lines.append(
            f"{row.k:>3} {row.bound_lower:>14.6e} {row.observed_min:>14.6e} "
            f"{row.observed_max:>14.6e} {row.bound_upper:>14.6e}  {'pass' if row.passed else 'FAIL'}"
        )
    lines.append(f"overall: {'pass' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def _write_bounds_csv(report: BoundsReport, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "bound_lower", "bound_upper", "observed_min", "observed_max", "pass"])
        for row in report.rows:
            writer.writerow([row.k, row.bound_lower, row.bound_upper,
                             row.observed_min, row.observed_max,
                             "true" if row.passed else "false"])


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.input.is_dir():
        files = sorted(cfg.input.glob("level_*.json"))
        if len(files) < 2:
            raise ValueError(f"need at least level_000.json and level_001.json in {cfg.input}")
        levels = [load_mesh(f) for f in files]
    else:
        mesh = load_mesh(cfg.input)
        if cfg.steps < 1:
            raise ValueError(f"verify needs steps >= 1, got {cfg.steps}")
        _require_capacity(len(mesh.triangles), cfg.steps)
        levels = refine_global(mesh, cfg.steps, "leab")
    report = verify_bounds(levels)
    text = _render_report(report)
    print(text)
    if cfg.output is not None:
        cfg.output.mkdir(parents=True, exist_ok=True)
        (cfg.output / "bounds.txt").write_text(text + "\n", encoding="utf-8")
        _write_bounds_csv(report, cfg.output / "bounds.csv")
    if not report.passed:
        violation = report.first_violation
        if violation is not None:
            print(
                f"verification failed: level {violation.k} triangle {violation.triangle} "
                f"diameter {violation.observed!r} outside {violation.side} bound {violation.bound!r}",
                file=sys.stderr,
            )
        else:
            print(
                f"verification failed: level-1 minimum angle {report.alpha1_deg!r} deg "
                f"is below half the base minimum {report.alpha0_deg / 2.0!r} deg",
                file=sys.stderr,
            )
        return 1
    return 0


def _read_points(path: Path) -> list[tuple[complex, str]]:
    """One 'a+bi' per line with an optional label; '#' starts a comment line."""
    points = []
    for n, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, label = line.partition(" ")
        try:
            z = parse_complex(head)
        except ValueError as exc:
            raise ValueError(f"{path}: line {n}: {exc}") from exc
        points.append((z, label.strip()))
    return points


def cmd_plot(cfg: RunConfig) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    if cfg.input is not None:
        out = cfg.output / "mesh.svg"
        out.write_text(mesh_svg(load_mesh(cfg.input)), encoding="utf-8")
    else:
        points = _read_points(cfg.points) if cfg.points is not None else []
        out = cfg.output / "shape.svg"
        out.write_text(shape_space_svg(points), encoding="utf-8")
    print(f"wrote {out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    cfg = RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        steps=getattr(args, "steps", 0),
        method=getattr(args, "method", "leab"),
        z=getattr(args, "z", None),
        word=getattr(args, "word", ""),
        tol=getattr(args, "tol", None),
        points=getattr(args, "points", None),
    )
    handlers = {"refine": cmd_refine, "orbit": cmd_orbit, "verify": cmd_verify, "plot": cmd_plot}
    try:
        return handlers[cfg.command](cfg)
    except (DegenerateShapeError, DegenerateTriangleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MeshFormatError, InsufficientLevelsError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
