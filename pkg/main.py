"""
DUALFRENET Main CLI Entry Point
Dual Frenet apparatus, Mannheim pairs and line geometry

Usage:
  python main.py frenet --input curve.json [--output frenet.csv] [--samples N]
  python main.py classify --input curve.json
  python main.py mannheim-generate --input profile.json --output bundle/
  python main.py mannheim-verify --input bundle/
  python main.py study --input line.json
  python main.py ruled-export --input curve.json --output mesh.obj
  python main.py selftest
"""

import argparse
import json
import sys
import time
import traceback
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.rule import Rule
from rich.table import Table
from rich.text import Text

import config
from core.curve_catalog import parse_scalar_expr
from core.dual_algebra import DualScalar
from core.dual_curve import (
    DualCurve,
    classify_planar,
    classify_straight_line,
    curve_from_dict,
    dual_arc_length,
    frenet,
    sampled_definition,
)
from core.dual_linear import DualVec3, dual_angle
from core.errors import AngleSingularity, DualFrenetError, InputError, InvalidCurveDefinition, VanishingCurvature
from core.frenet_synthesis import integrate_frenet, profile_from_dict
from core.line_geometry import Line3, dual_to_line, line_pair_geometry, line_to_dual
from core.mannheim import generate_pair, osculating_ratio, pair_check, verify_theorems
from core.ruled_surface import dual_curve_to_ruled, export_mesh
from core.selftest import AcceptanceSuite, CriterionResult
from models.geometry import CheckResult, MannheimPair
from models.run import RunConfig
from storage import artifacts
from storage.logger import get_logger, setup_logging
from utils.helpers import compute_deterministic_hash, format_sig, now_iso, ordered_map

# Payloads own stdout; everything human-readable goes to stderr.
console = Console(stderr=True)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2

logger = get_logger("dualfrenet.cli")


# ─────────────────────────────────────────────────────────────────────────────
# Step printer
# ─────────────────────────────────────────────────────────────────────────────

# Everything below honours console.quiet, which main() sets in --json mode.

def section(title: str):
    console.print()
    console.print(Rule(f"[bold bright_cyan]{title}[/bold bright_cyan]", style="bright_cyan"))
    console.print()


def step(n: int, total: int, label: str):
    """Print a numbered step header that stays on screen."""
    console.print(
        f"  [dim][[/dim][bold bright_cyan]{n}/{total}[/bold bright_cyan][dim]][/dim]"
        f"  [bright_white]{label}[/bright_white]"
    )


def step_ok(detail: str = "done"):
    """Print a ✓ success line under the current step."""
    console.print(f"       [bright_green]✓[/bright_green]  [dim]{escape(detail)}[/dim]")


def step_data(key: str, value: Any, color: str = "bright_white"):
    console.print(f"       [dim]{key}:[/dim]  [{color}]{escape(str(value))}[/{color}]")


def step_warn(msg: str):
    console.print(f"       [yellow]⚠[/yellow]  [yellow]{escape(msg)}[/yellow]")


def step_flag(msg: str):
    console.print(f"       [bright_red]▸[/bright_red]  [bright_red]{escape(msg)}[/bright_red]")


def print_banner():
    banner = Text()
    banner.append("\n")
    banner.append("  ╔╦╗╦ ╦╔═╗╦    ╔═╗╦═╗╔═╗╔╗╔╔═╗╔╦╗\n", style="bold bright_cyan")
    banner.append("   ║║║ ║╠═╣║    ╠╣ ╠╦╝║╣ ║║║║╣  ║ \n", style="bold cyan")
    banner.append("  ═╩╝╚═╝╩ ╩╩═╝  ╚  ╩╚═╚═╝╝╚╝╚═╝ ╩ \n", style="bold blue")
    banner.append("\n")
    banner.append(f"  ⬡  {config.APP_DESCRIPTION}  ⬡\n", style="bold bright_white")
    banner.append(f"  Version {config.APP_VERSION}  •  tolerance scale x{config.TOL_SCALE:g}\n", style="dim white")
    console.print(Panel(banner, border_style="bright_cyan", padding=(0, 2)))


def emit_json(obj: Any):
    """Write one JSON document to stdout."""
    print(json.dumps(obj, default=str), flush=True)


# ─────────────────────────────────────────────────────────────────────────────
# Input helpers
# ─────────────────────────────────────────────────────────────────────────────

def load_curve(doc: Any, h: Optional[float]) -> DualCurve:
    """Curve catalog JSON, or a Frenet profile JSON (kappa/tau) to synthesize."""
    if isinstance(doc, dict) and "kappa" in doc and "tau" in doc:
        profile, default_step = profile_from_dict(doc)
        h = h if h is not None else default_step
        step_data("Source", f"Frenet profile over s∈[{profile.s_range[0]:g}, {profile.s_range[1]:g}], step {h:g}")
        return integrate_frenet(profile, h)
    curve = curve_from_dict(doc)
    step_data("Source", f"curve over t∈[{curve.domain[0]:g}, {curve.domain[1]:g}] ({curve.derivative_mode})")
    return curve


def parse_lambda(raw: Any) -> DualScalar:
    try:
        if isinstance(raw, dict):
            return DualScalar.from_dict(raw)
        if isinstance(raw, (list, tuple)):
            return DualScalar(float(raw[0]), float(raw[1]) if len(raw) > 1 else 0.0)
        return DualScalar(float(raw))
    except (KeyError, TypeError, ValueError, IndexError):
        raise InvalidCurveDefinition(f"'lambda' must be a number, [re, du] or {{re, du}}, got {raw!r}")


def _finite_pair(raw: Any, name: str) -> List[float]:
    try:
        a, b = float(raw[0]), float(raw[1])
    except (TypeError, ValueError, IndexError):
        raise InputError(f"'{name}' must be [a, b], got {raw!r}")
    if not b > a:
        raise InputError(f"'{name}' must be increasing, got {raw!r}")
    return [a, b]


# ─────────────────────────────────────────────────────────────────────────────
# Commands
# ─────────────────────────────────────────────────────────────────────────────

def cmd_frenet(cfg: RunConfig) -> int:
    tol = cfg.tolerances()
    section("DUAL FRENET APPARATUS")

    step(1, 3, "Curve definition")
    curve = load_curve(artifacts.read_json(cfg.input), cfg.step)
    step_ok()

    step(2, 3, "Frame, curvature and torsion over the grid")
    t0 = time.time()
    ts = curve.grid(cfg.samples or config.FRENET_SAMPLES)
    frames = ordered_map(lambda t: frenet(curve, float(t), tol), list(ts), cfg.parallel)
    pieces = ordered_map(
        lambda k: dual_arc_length(curve, float(ts[k]), float(ts[k + 1]), tol), range(len(ts) - 1), cfg.parallel
    )
    s_re = np.concatenate([[0.0], np.cumsum([p.re for p in pieces])])
    s_du = np.concatenate([[0.0], np.cumsum([p.du for p in pieces])])
    step_ok(f"{len(ts)} samples in {time.time() - t0:.2f}s")
    step_data("κ̃ at start", f"({frames[0].kappa.re:.9g}, {frames[0].kappa.du:.9g})")
    step_data("τ̃ at start", f"({frames[0].tau.re:.9g}, {frames[0].tau.du:.9g})")
    step_data("Dual arc length", f"({s_re[-1]:.9g}, {s_du[-1]:.9g})")

    step(3, 3, "Writing CSV")
    rows = []
    for t, f, a, b in zip(ts, frames, s_re, s_du):
        row = [t, a, b]
        for v in f.frame():
            row += list(v.re) + list(v.du)
        row += [f.kappa.re, f.kappa.du, f.tau.re, f.tau.du]
        rows.append([format_sig(float(x)) for x in row])
    artifacts.write_frenet_csv(cfg.output, rows)
    step_ok(cfg.output or "stdout")
    if cfg.json_output and cfg.output:
        emit_json({"command": "frenet", "output": cfg.output, "samples": len(rows)})
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    tol = cfg.tolerances()
    samples = cfg.samples or config.CLASSIFY_SAMPLES
    section("STRAIGHT-LINE AND PLANARITY CLASSIFIERS")

    step(1, 2, "Straight line: κ̃ = 0")
    curve = load_curve(artifacts.read_json(cfg.input), cfg.step)
    straight = classify_straight_line(curve, samples, tol)
    step_data("max |κ̃|", f"({straight.max_kappa_re:.3e}, {straight.max_kappa_du:.3e})")
    step_ok("straight line" if straight.is_line else "not a straight line")

    step(2, 2, "Plane curve: τ̃ = 0")
    details: Dict[str, Any] = {"straight_line": straight.to_dict()}
    if straight.is_line:
        planar_flag = None
        details["planar"] = {"note": "curvature vanishes; the osculating plane is undefined"}
        step_warn("skipped: a straight line has no Frenet frame")
    else:
        planar = classify_planar(curve, samples, tol)
        planar_flag = planar.is_planar
        details["planar"] = planar.to_dict()
        step_data("max |τ̃|", f"({planar.max_tau_re:.3e}, {planar.max_tau_du:.3e})")
        step_ok("plane curve" if planar.is_planar else "not a plane curve")

    artifacts.write_json(cfg.output, {"straight_line": straight.is_line, "planar": planar_flag, "details": details})
    return EXIT_OK


def cmd_mannheim_generate(cfg: RunConfig) -> int:
    tol = cfg.tolerances()
    section("MANNHEIM PAIR GENERATION")

    step(1, 3, "Generator parameters")
    doc = artifacts.read_json(cfg.input)
    if not isinstance(doc, dict) or "lambda" not in doc or "tau1" not in doc:
        raise InputError("Generator input must be an object with 'lambda' and 'tau1'")
    lam = parse_lambda(doc["lambda"])
    tau1 = parse_scalar_expr(doc["tau1"])
    s_range = _finite_pair(doc.get("s_range", [-1.0, 1.0]), "s_range")
    h = cfg.step if cfg.step is not None else float(doc.get("step", config.DEFAULT_STEP))
    samples = cfg.samples or int(doc.get("samples", config.PAIR_SAMPLES))
    step_data("λ̃", f"({lam.re:g}, {lam.du:g})", "bright_cyan")
    step_data("τ̃₁", tau1.to_dict()["kind"])
    step_data("s range", s_range)
    step_ok()

    step(2, 3, "Synthesize partner, offset and validate")
    t0 = time.time()
    pair = generate_pair(lam, tau1, tuple(s_range), h, tol, parallel=cfg.parallel, samples=samples)
    step_ok(f"{time.time() - t0:.2f}s")
    step_data("Recovered λ̃", f"({pair.lam.re:.12g}, {pair.lam.du:.12g})")
    step_data("Orientation ν", pair.orientation)

    step(3, 3, "Writing pair bundle")
    t, t1 = pair.correspondence
    curve_c = sampled_definition(pair.curve_c, t)
    curve_c1 = sampled_definition(pair.curve_c1, t1)
    metadata = {
        "app": config.APP_NAME,
        "version": config.APP_VERSION,
        "pair": pair.to_dict(),
        "generator": {
            "lambda": lam.to_dict(),
            "tau1": tau1.to_dict(),
            "s_range": s_range,
            "step": h,
            "samples": samples,
        },
        "samples_hash": compute_deterministic_hash([curve_c, curve_c1]),
    }
    paths = artifacts.save_pair_bundle(cfg.output, metadata, curve_c, curve_c1)
    step_ok(cfg.output)
    if cfg.json_output:
        emit_json({"command": "mannheim-generate", "files": paths, "pair": metadata["pair"]})
    return EXIT_OK


def bundle_consistency(pair: MannheimPair, curve_c: Dict[str, Any], curve_c1: Dict[str, Any],
                       tol_pair: float) -> CheckResult:
    """Stored samples against the regenerated curves at the stored parameters."""
    re, du = [], []
    try:
        for curve, stored in ((pair.curve_c, curve_c), (pair.curve_c1, curve_c1)):
            ts = np.asarray(stored["real"]["t"], dtype=float)
            values = curve.eval_array(ts)
            re.append(np.linalg.norm(values[:, :3] - np.asarray(stored["real"]["points"], dtype=float), axis=1))
            du.append(np.linalg.norm(values[:, 3:] - np.asarray(stored["dual"]["points"], dtype=float), axis=1))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed curve samples in the pair bundle: {e}")
    return CheckResult.from_residuals("bundle_consistency", np.concatenate(re), np.concatenate(du), tol_pair)


def cmd_mannheim_verify(cfg: RunConfig) -> int:
    tol = cfg.tolerances()
    section("MANNHEIM PAIR VERIFICATION")

    step(1, 4, "Loading pair bundle")
    metadata, curve_c, curve_c1 = artifacts.load_pair_bundle(cfg.input)
    gen = metadata.get("generator")
    step_ok("generator parameters found" if isinstance(gen, dict) else "no generator; using the stored samples")

    t0 = time.time()
    if isinstance(gen, dict):
        step(2, 4, "Regenerating the pair")
        pair = regenerate_pair(gen, cfg, tol)
        step_ok(f"{time.time() - t0:.2f}s")
        step(3, 4, "Evaluating pair relations")
        report = verify_theorems(pair, tol)
        report.checks.insert(0, bundle_consistency(pair, curve_c, curve_c1, tol.pair))
    else:
        step(2, 4, "Rebuilding both curves from the stored samples")
        pair, report = pair_check(
            curve_from_dict(curve_c), curve_from_dict(curve_c1), tol,
            samples=cfg.samples or config.PAIR_SAMPLES, parallel=cfg.parallel,
        )
        step_ok(f"{time.time() - t0:.2f}s")
        step(3, 4, "Evaluating pair relations")
        if pair is not None:
            report.extend(verify_theorems(pair, tol))
    for check in report.checks:
        worst = max(check.max_residual_re, check.max_residual_du)
        if check.passed:
            step_ok(f"{check.name}: {worst:.3e}")
        elif check.diagnostic:
            step_warn(f"{check.name}: {worst:.3e} (diagnostic)")
        else:
            step_flag(f"{check.name}: {worst:.3e} > {check.tolerance:.1e}")

    step(4, 4, "Osculating ratio")
    document = report.to_dict()
    if pair is None:
        document["osculating"] = {"error": "the curves do not form a Mannheim pair"}
        step_warn(document["osculating"]["error"])
    else:
        try:
            osc = osculating_ratio(pair, tol)
            summary = osc.to_dict()
            summary.pop("ratio")
            document["osculating"] = summary
            step_data("Relative spread", f"{osc.spread:.3e}")
            step_data("Closed-form deviation", f"{osc.consistent_form_deviation:.3e}")
        except VanishingCurvature as e:
            document["osculating"] = {"error": f"{e.name}: {e}"}
            step_warn(str(e))

    artifacts.write_json(cfg.output, document)
    if report.passed:
        step_ok("all relations hold")
        return EXIT_OK
    step_flag(f"failed: {', '.join(c.name for c in report.failures())}")
    return EXIT_FAILURE


def regenerate_pair(gen: Dict[str, Any], cfg: RunConfig, tol) -> MannheimPair:
    """Rebuild the pair from the generator section of pair.json."""
    lam = parse_lambda(gen.get("lambda"))
    tau1 = parse_scalar_expr(gen.get("tau1"))
    s_range = _finite_pair(gen.get("s_range"), "s_range")
    h = cfg.step if cfg.step is not None else float(gen.get("step", config.DEFAULT_STEP))
    samples = cfg.samples or int(gen.get("samples", config.PAIR_SAMPLES))
    step_data("λ̃", f"({lam.re:g}, {lam.du:g})", "bright_cyan")
    return generate_pair(lam, tau1, tuple(s_range), h, tol, parallel=cfg.parallel, samples=samples)


def cmd_study(cfg: RunConfig) -> int:
    tol = cfg.tolerances()
    section("E. STUDY MAP")
    doc = artifacts.read_json(cfg.input)
    if not isinstance(doc, dict):
        raise InputError("Study input must be a JSON object")
    try:
        if "lines" in doc:
            first, second = (Line3.from_dict(d) for d in doc["lines"])
            result = study_line_pair(first, second, tol)
        elif "point" in doc and "direction" in doc:
            result = line_to_dual(Line3.from_dict(doc), tol).to_dict()
            step_ok("line → dual unit vector")
        elif "re" in doc:
            result = dual_to_line(DualVec3.from_dict(doc), tol).to_dict()
            step_ok("dual unit vector → line")
        else:
            raise InputError("Study input must be a line {point, direction}, a dual vector {re, du} or {lines: [L1, L2]}")
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"Malformed study input: {e}")
    artifacts.write_json(cfg.output, result)
    return EXIT_OK


def study_line_pair(first: Line3, second: Line3, tol) -> Dict[str, Any]:
    a, b = line_to_dual(first, tol), line_to_dual(second, tol)
    angle, distance = line_pair_geometry(first, second)
    result: Dict[str, Any] = {
        "lines": [a.to_dict(), b.to_dict()],
        "angle": angle,
        "distance": distance,
    }
    try:
        theta = dual_angle(a, b, tol)
        result["dual_angle"] = theta.to_dict()
        step_data("Dual angle", f"({theta.re:.12g}, {theta.du:.12g})")
    except AngleSingularity:
        result["dual_angle"] = None
        result["note"] = "lines are parallel; the dual angle has no dual part"
        step_warn(result["note"])
    step_data("Angle / distance", f"{angle:.12g} / {distance:.12g}")
    return result


def cmd_ruled_export(cfg: RunConfig) -> int:
    tol = cfg.tolerances()
    section("RULED SURFACE EXPORT")

    step(1, 2, "Dual curve → ruled patch")
    curve = load_curve(artifacts.read_json(cfg.input), cfg.step)
    grid = curve.grid(cfg.samples or config.FRENET_SAMPLES)
    patch = dual_curve_to_ruled(curve, grid, cfg.u_range, tol, cfg.parallel)
    step_ok(f"{patch.size} rulings")
    if patch.is_degenerate(tol):
        step_warn("constant dual curve: every ruling is the same line")

    step(2, 2, "Triangulated mesh")
    mesh = export_mesh(patch, cfg.u_samples, tol)
    artifacts.write_bytes(cfg.output, mesh)
    step_ok(f"{patch.size * cfg.u_samples} vertices, {2 * (patch.size - 1) * (cfg.u_samples - 1)} triangles")
    if cfg.json_output and cfg.output:
        emit_json({"command": "ruled-export", "output": cfg.output, "rulings": patch.size,
                   "degenerate": patch.is_degenerate(tol)})
    return EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    section("ACCEPTANCE SUITE")
    suite = AcceptanceSuite(seed=cfg.seed, tol=cfg.tolerances(), parallel=cfg.parallel)
    start = time.time()
    results = suite.run()
    elapsed = time.time() - start
    passed = all(r.passed for r in results)

    if cfg.output:
        artifacts.write_json(cfg.output, [r.to_dict() for r in results])
    if cfg.json_output:
        emit_json({
            "pass": passed,
            "elapsed_s": round(elapsed, 3),
            "finished_at": now_iso(),
            "criteria": [r.to_dict() for r in results],
        })
    else:
        print_selftest_table(results, elapsed, cfg.seed)
    return EXIT_OK if passed else EXIT_FAILURE


def print_selftest_table(results: Sequence[CriterionResult], elapsed: float, seed: int):
    table = Table(
        title=f"Acceptance criteria  ({sum(r.passed for r in results)} of {len(results)} pass)",
        box=box.ROUNDED,
        border_style="bright_cyan",
        header_style="bold bright_cyan",
    )
    table.add_column("#", justify="right", width=3)
    table.add_column("Criterion", style="bright_white")
    table.add_column("Result", justify="center", width=8)
    table.add_column("Time", justify="right", style="dim", width=8)
    table.add_column("Detail", style="dim")
    for r in results:
        verdict = "[bright_green]PASS[/bright_green]" if r.passed else "[bright_red]FAIL[/bright_red]"
        table.add_row(str(r.number), r.title, verdict, f"{r.elapsed_s:.2f}s", escape(r.error or ""))
    console.print(table)
    console.print(f"  [dim]Total:[/dim] [bold]{elapsed:.2f}s[/bold]  [dim]seed[/dim] {seed}")
    console.print()


HANDLERS = {
    "frenet": cmd_frenet,
    "classify": cmd_classify,
    "mannheim-generate": cmd_mannheim_generate,
    "mannheim-verify": cmd_mannheim_verify,
    "study": cmd_study,
    "ruled-export": cmd_ruled_export,
    "selftest": cmd_selftest,
}


# ─────────────────────────────────────────────────────────────────────────────
# Parser
# ─────────────────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualfrenet",
        description=f"{config.APP_NAME}: {config.APP_DESCRIPTION}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py frenet --input helix.json --samples 11
  python main.py classify --input circle.json
  python main.py mannheim-generate --input tan_profile.json --output pair/
  python main.py mannheim-verify --input pair/ --output report.json
  python main.py study --input line.json
  python main.py ruled-export --input helicoid.json --output helicoid.obj --u-range -1 1
  python main.py selftest --seed 7
        """,
    )
    parser.add_argument("--no-banner", action="store_true", help="Suppress banner")
    parser.add_argument("--json",      action="store_true", help="Quiet console; machine-readable JSON summaries on stdout")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input",     default=None, metavar="PATH", help="Input JSON file (pair bundle directory for mannheim-verify)")
    common.add_argument("--output",    default=None, metavar="PATH", help="Output file (directory for mannheim-generate); stdout when omitted")
    common.add_argument("--tol-thm",   type=float, default=None, metavar="X", help="Theorem residual tolerance")
    common.add_argument("--tol-pair",  type=float, default=None, metavar="X", help="Pair coincidence tolerance")
    common.add_argument("--step",      type=float, default=None, metavar="H", help="Integration step for Frenet profiles")
    common.add_argument("--samples",   type=int,   default=None, metavar="N", help="Grid size")
    common.add_argument("--u-range",   type=float, nargs=2, default=None, metavar=("A", "B"), help="Ruling parameter range")
    common.add_argument("--u-samples", type=int,   default=None, metavar="N", help="Mesh samples across each ruling")
    common.add_argument("--parallel",  action="store_true", help="Sample-level thread parallelism (order-stable output)")
    common.add_argument("--seed",      type=int,   default=0, metavar="K", help="Seed for randomized property suites")

    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("frenet",            parents=[common], help="Sample the dual Frenet apparatus to CSV")
    subparsers.add_parser("classify",          parents=[common], help="Straight-line and planarity classifiers")
    subparsers.add_parser("mannheim-generate", parents=[common], help="Generate a Mannheim pair bundle from τ̃₁")
    subparsers.add_parser("mannheim-verify",   parents=[common], help="Verify every pair relation on a bundle")
    subparsers.add_parser("study",             parents=[common], help="E. Study map and line-pair geometry")
    subparsers.add_parser("ruled-export",      parents=[common], help="Export the ruled surface of a dual curve as OBJ")
    subparsers.add_parser("selftest",          parents=[common], help="Run the acceptance suite")
    return parser


# ─────────────────────────────────────────────────────────────────────────────
# Entry Point
# ─────────────────────────────────────────────────────────────────────────────

def _report_error(name: str, message: str, json_mode: bool, details: Optional[Dict[str, Any]] = None):
    sys.stderr.write(f"{name}: {message}\n")
    sys.stderr.flush()
    if json_mode:
        emit_json({"type": "error", "error": name, "message": message, "details": details or {}})


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging(config.LOG_FILE)
    args = build_parser().parse_args(argv)
    json_mode = bool(getattr(args, "json", False))

    try:
        cfg = RunConfig.from_args(args).validate()
    except InputError as e:
        _report_error("InputError", str(e), json_mode)
        return EXIT_BAD_INPUT

    if not json_mode and not cfg.no_banner:
        print_banner()
    console.quiet = json_mode
    logger.info(f"Running {cfg.command}: {cfg.to_dict()}")

    try:
        return HANDLERS[cfg.command](cfg)
    except KeyboardInterrupt:
        if not json_mode:
            console.print("\n\n[yellow]Interrupted by user.[/yellow]\n")
        return EXIT_FAILURE
    except (InputError, InvalidCurveDefinition) as e:
        name = e.name if isinstance(e, DualFrenetError) else "InputError"
        _report_error(name, str(e), json_mode, getattr(e, "details", None))
        return EXIT_BAD_INPUT
    except DualFrenetError as e:
        _report_error(e.name, str(e), json_mode, e.details)
        return EXIT_FAILURE
    except Exception as e:
        _report_error(type(e).__name__, str(e), json_mode)
        if not json_mode:
            console.print(f"[dim]{escape(traceback.format_exc())}[/dim]")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
