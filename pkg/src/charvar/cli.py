"""Command-line front end: ``charvar <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .character_variety import (
    a_polynomial_component,
    load_presentation,
    projective_closure_and_ideal_points,
    smoothness_check,
)
from .exact.polynomial import PolynomialParseError
from .groebner import NotZeroDimensionalError
from .surgery import (
    MODES,
    SurgeryError,
    SurgerySlope,
    cs_norm_from_ideal_points,
    cs_norm_generic_fiber,
    format_reports,
    ideal_point_data,
    invariant_report,
    knot_data,
    parse_slopes,
    surgery_character_count,
)
from .traces import FreeWord, specialize_conjugate, trace_polynomial

COMMANDS = ("traces", "charvar", "boundary", "apoly", "invariants", "norm", "surgery-count", "verify-paper")
NEEDS_SLOPES = ("invariants", "norm", "surgery-count")
DEFAULT_SEED = 20240607


@dataclass
class RunConfig:
    command: str
    presentation: str = "figure8"
    word: str | None = None
    slopes: list[SurgerySlope] = field(default_factory=list)
    fmt: str = "text"
    seed: int = DEFAULT_SEED
    mode: str = "elimination"
    verbosity: int = 0
    out: str | None = None
    timings: bool = False
    trace_value: int = 2


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charvar", description="SL2 character varieties and surgery invariants of two-generator knots.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("target", nargs="?", help="word (traces), presentation file or bundled name (default figure8), or a slope for surgery-count")
    ap.add_argument("--presentation", help="presentation file or bundled name")
    ap.add_argument("--slopes", help="comma-separated slopes p/q")
    ap.add_argument("--slope-file", help="file with one slope p/q per line")
    ap.add_argument("--format", dest="fmt", choices=("tsv", "json", "text"), default=None)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--mode", choices=MODES, default="elimination")
    ap.add_argument("--trace-value", type=int, choices=(2, -2), default=2)
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON diagnostics")
    ap.add_argument("--out", help="write the report to FILE instead of stdout")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    return ap


def _glue_slopes(argv: list[str]) -> list[str]:
    # "--slopes -1/2" would otherwise read -1/2 as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--slopes" and i + 1 < len(argv):
            out.append(f"--slopes={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    argv = _glue_slopes(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, seed=args.seed, mode=args.mode, verbosity=args.verbose, out=args.out)
    cfg.timings = args.timings
    cfg.trace_value = args.trace_value
    target = args.target
    if args.command == "traces":
        if not target:
            raise UsageError("traces needs a word, e.g. 'charvar traces BabA'")
        cfg.word = target
    elif args.command == "surgery-count" and target and "/" in target:
        cfg.slopes = parse_slopes(target)
    elif target:
        cfg.presentation = target
    if args.presentation:
        cfg.presentation = args.presentation
    if args.slopes:
        cfg.slopes += parse_slopes(args.slopes)
    if args.slope_file:
        cfg.slopes += parse_slopes(Path(args.slope_file).read_text())
    if args.command in NEEDS_SLOPES and not cfg.slopes:
        raise UsageError(f"{args.command} needs at least one slope (--slopes p/q)")
    cfg.fmt = args.fmt or ("tsv" if args.command == "invariants" else "text")
    return cfg


def _worker_count(n: int) -> int:
    raw = os.environ.get("CHARVAR_THREADS", "1")
    try:
        cap = max(1, int(raw))
    except ValueError:
        raise UsageError(f"CHARVAR_THREADS must be an integer, got {raw!r}") from None
    return min(cap, n)


def _report_job(args):
    presentation, slope, mode, seed, timings = args
    data = knot_data(load_presentation(presentation))
    return invariant_report(slope, data, mode=mode, seed=seed, timings=timings)


def cmd_traces(cfg: RunConfig) -> str:
    w = FreeWord.parse(cfg.word)
    tp = trace_polynomial(w)
    if cfg.fmt == "json":
        return json.dumps({"word": str(w), "trace": str(tp), "conjugate": str(specialize_conjugate(tp))}) + "\n"
    return f"{tp}\n"


def cmd_charvar(cfg: RunConfig) -> str:
    data = knot_data(load_presentation(cfg.presentation))
    proj = projective_closure_and_ideal_points(data.x0)
    smooth_aff = smoothness_check(data.x0.generator)[0]
    smooth_proj = smoothness_check(proj["closure"], True)[0]
    points = [f"{ip.point} (multiplicity {ip.multiplicity})" for ip in proj["points"]]
    info = {
        "full": str(data.full.generator),
        "abelian": "x^2 - z - 2",
        "nonabelian": str(data.x0.generator),
        "reducible_locus": None if data.reducible_locus is None else str(data.reducible_locus),
        "projective_closure": str(proj["closure"]),
        "smooth_affine": smooth_aff,
        "smooth_projective": smooth_proj,
        "ideal_points": points,
    }
    if cfg.fmt == "json":
        return json.dumps(info, indent=2) + "\n"
    lines = [f"{k}: {', '.join(v) if isinstance(v, list) else v}" for k, v in info.items()]
    return "\n".join(lines) + "\n"


def cmd_boundary(cfg: RunConfig) -> str:
    data = knot_data(load_presentation(cfg.presentation))
    info = {"F": str(data.boundary.F), "G": str(data.boundary.G), "image": [str(g) for g in data.image]}
    if cfg.fmt == "json":
        return json.dumps(info, indent=2) + "\n"
    return f"F: {info['F']}\nG: {info['G']}\nimage:\n" + "".join(f"  {g}\n" for g in info["image"])


def cmd_apoly(cfg: RunConfig) -> str:
    data = knot_data(load_presentation(cfg.presentation))
    A = a_polynomial_component(data.boundary)
    if cfg.fmt == "json":
        return json.dumps({"A0": str(A)}) + "\n"
    return f"{A}\n"


def cmd_invariants(cfg: RunConfig) -> str:
    jobs = [(cfg.presentation, s, cfg.mode, cfg.seed, cfg.timings) for s in cfg.slopes]
    workers = _worker_count(len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_report_job, jobs))  # map keeps input order
    else:
        reports = [_report_job(j) for j in jobs]
    return format_reports(reports, cfg.fmt)


def cmd_norm(cfg: RunConfig) -> str:
    data = knot_data(load_presentation(cfg.presentation))
    points = ideal_point_data(data)
    rows = []
    for s in cfg.slopes:
        gen = cs_norm_generic_fiber(s, data, cfg.seed)
        ideal = cs_norm_from_ideal_points(s, points)
        rows.append({"p": s.p, "q": s.q, "generic_fiber": gen.norm, "ideal_points": ideal, "draws": [str(c) for c in gen.draws]})
    if cfg.fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if cfg.fmt == "tsv":
        return "p\tq\tgeneric_fiber\tideal_points\n" + "".join(
            f"{r['p']}\t{r['q']}\t{r['generic_fiber']}\t{r['ideal_points']}\n" for r in rows
        )
    return "".join(f"{r['p']}/{r['q']}: generic fiber {r['generic_fiber']}, ideal points {r['ideal_points']}\n" for r in rows)


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cmd_surgery_count(cfg: RunConfig) -> str:
    data = knot_data(load_presentation(cfg.presentation))
    out = []
    for s in cfg.slopes:
        r = surgery_character_count(s, data, cfg.trace_value)
        out.append(
            {
                "p": s.p,
                "q": s.q,
                "trace_value": r.trace_value,
                "eliminant": str(r.eliminant),
                "factors": [[str(f), k] for f, k in r.factors],
                "points": r.points,
                "points_at_pm2": r.points_at_pm2,
                "points_on_reducible_locus": r.points_on_reducible_locus,
                "survivors": r.survivors,
                "rational_fibers": {_fmt_fraction(x): str(f) for x, f in r.fibers.items()},
            }
        )
    if cfg.fmt == "json":
        return json.dumps(out, indent=2) + "\n"
    lines = []
    for o in out:
        lines.append(f"slope {o['p']}/{o['q']}, trace {o['trace_value']}")
        lines.append(f"  eliminant: {o['eliminant']}")
        lines.append("  factors: " + ", ".join(f"({f})^{k}" for f, k in o["factors"]))
        lines.append(
            f"  points: {o['points']} (x = +-2: {o['points_at_pm2']}, reducible locus: "
            f"{o['points_on_reducible_locus']}, remaining: {o['survivors']})"
        )
        for x, f in o["rational_fibers"].items():
            lines.append(f"  fiber over x = {x}: {f}")
    return "\n".join(lines) + "\n"


def cmd_verify_paper(cfg: RunConfig) -> tuple[str, bool]:
    from .verify import run_checks

    results = run_checks(cfg.presentation, seed=cfg.seed)
    if cfg.fmt == "json":
        text = json.dumps([r.to_json() for r in results], indent=2) + "\n"
    else:
        width = max(len(r.name) for r in results)
        text = "".join(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<{width}}  {r.detail}\n" for r in results)
        text += f"{sum(r.ok for r in results)}/{len(results)} checks passed\n"
    return text, all(r.ok for r in results)


HANDLERS = {
    "traces": cmd_traces,
    "charvar": cmd_charvar,
    "boundary": cmd_boundary,
    "apoly": cmd_apoly,
    "invariants": cmd_invariants,
    "norm": cmd_norm,
    "surgery-count": cmd_surgery_count,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    ok = True
    if cfg.command == "verify-paper":
        text, ok = cmd_verify_paper(cfg)
    else:
        text = HANDLERS[cfg.command](cfg)
    return (0 if ok else 1), text


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbosity, 2), format="%(levelname)s %(name)s: %(message)s")
        status, text = run(cfg)
    except (UsageError, SurgeryError, PolynomialParseError, FileNotFoundError, NotZeroDimensionalError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
