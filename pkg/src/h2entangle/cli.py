"""Command-line interface: ``h2entangle <command> [options]``.

Tables are written as CSV (9 significant digits); SVG figures are rendered
from the same arrays. Errors are reported on stderr as ``code: message``.
"""
import argparse
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import ci_bridge, deviation, hydrogen
from .deviation import MeasureKind
from .errors import H2EntangleError
from .measures import ground_state_concurrence, ground_state_entropy

# published reference values, reported next to the computed ones
REFERENCE_ALPHA = 0.691217
REFERENCE_ALPHA_PRIME = 0.383249
REFERENCE_LAMBDA_MIN = {MeasureKind.ENTROPY: 0.485, MeasureKind.CONCURRENCE: 0.371}

DEFAULTS = {
    "g": 1.0,
    "b_field": 0.5,
    "window": "0:1",
    "measure": "entropy",
    "points": 101,
    "out": None,
    "format": "csv",
    "input": None,
    "denominator": "squared",
    "b_range": "0.3:0.8",
    "r_range": "0.3:3.5",
    "nb": 51,
    "nr": 161,
    "levels": "-0.038:0.04",
    "n_levels": 12,
    "r_range_h": "0:6",
}
CONVERTERS = {"g": float, "b_field": float, "points": int, "nb": int, "nr": int, "n_levels": int}


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def parse_range(text, name):
    try:
        lo, hi = (float(t) for t in str(text).split(":"))
    except ValueError:
        raise CliError("invalid_argument", f"{name} must look like LO:HI, got {text!r}") from None
    if not lo < hi:
        raise CliError("invalid_argument", f"{name} needs LO < HI, got {text!r}")
    return lo, hi


def read_config(path):
    """Flat ``key = value`` file; keys match the long flag names."""
    cfg = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CliError("io_error", f"{path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError("config_error", f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise CliError("config_error", f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value
    return cfg


def resolve(args):
    """Merge flags over config file over defaults into a plain namespace."""
    cfg = read_config(args.config) if args.config else {}
    out = {}
    for key, default in DEFAULTS.items():
        value = getattr(args, key, None)
        if value is None:
            value = cfg.get(key, default)
        if value is not None and key in CONVERTERS:
            try:
                value = CONVERTERS[key](value)
            except ValueError:
                raise CliError("invalid_argument", f"{key}: bad value {value!r}") from None
        out[key] = value
    ns = argparse.Namespace(command=args.command, **out)
    ns.window = parse_range(ns.window, "window")
    if not 0.0 <= ns.window[0]:
        raise CliError("invalid_argument", "window must start at lambda >= 0")
    if not 0.0 <= ns.g <= 1.0:
        raise CliError("invalid_argument", f"g must lie in [0, 1], got {ns.g}")
    if ns.b_field <= 0.0:
        raise CliError("invalid_argument", f"b-field must be > 0, got {ns.b_field}")
    if ns.points < 2:
        raise CliError("invalid_argument", "points must be >= 2")
    ns.measure = deviation.as_kind(ns.measure)
    return ns


# -- output helpers -------------------------------------------------------

def fmt(v):
    if isinstance(v, str):
        return v
    v = float(v)
    if math.isnan(v):
        return "nan"
    return f"{v:.9g}"


def table_csv(header, columns):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in zip(*columns):
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def out_paths(cfg, suffix=""):
    base = Path(cfg.out)
    if base.suffix in (".csv", ".svg"):
        base = base.with_suffix("")
    stem = base.name + suffix
    return base.with_name(stem + ".csv"), base.with_name(stem + ".svg")


def emit(cfg, text, render=None, suffix="", stdout_if_no_out=True):
    """Write CSV text and/or an SVG rendering according to ``--format``.

    Without ``--out`` the CSV goes to stdout (when ``stdout_if_no_out``) and
    no SVG is produced.
    """
    if cfg.out is None:
        if stdout_if_no_out:
            sys.stdout.write(text)
        return
    csv_path, svg_path = out_paths(cfg, suffix)
    try:
        if cfg.format in ("csv", "both"):
            csv_path.write_text(text, encoding="utf-8")
        if cfg.format in ("svg", "both") and render is not None:
            render(str(svg_path))
    except OSError as exc:
        raise CliError("io_error", f"{exc.filename}: {exc.strerror}") from None


def report(lines):
    for key, value in lines:
        print(f"{key}: {fmt(value) if not isinstance(value, str) else value}")


# -- commands -------------------------------------------------------------

def cmd_sweep(cfg):
    lam = np.linspace(*cfg.window, cfg.points)
    s = ground_state_entropy(cfg.g, lam)
    c = ground_state_concurrence(cfg.g, lam)
    e = deviation.correlation_energy(lam, cfg.g)
    text = table_csv(["lambda", "S_vN", "C", "E_corr"], [lam, s, c, e])

    def render(path):
        from .plotting import line_plot
        line_plot(path, lam, {"S_vN": s, "C": c}, "lambda", "entanglement",
                  title=f"g = {cfg.g:g}")

    emit(cfg, text, render)


def _analysis(kind, cfg):
    return deviation.analyze(kind, cfg.g, cfg.window)


def cmd_alpha(cfg):
    s = _analysis(MeasureKind.ENTROPY, cfg)
    c = _analysis(MeasureKind.CONCURRENCE, cfg)
    report([
        ("g", cfg.g),
        ("window", f"{fmt(cfg.window[0])}:{fmt(cfg.window[1])}"),
        ("alpha_min", s.alpha_min),
        ("alpha_min_printed", f"-{REFERENCE_ALPHA} (printed with a minus sign; the integrand is positive)"),
        ("alpha_prime_min", c.alpha_min),
        ("alpha_prime_min_printed", REFERENCE_ALPHA_PRIME),
        ("lambda_min_entropy", s.lambda_min),
        ("lambda_min_entropy_tag", s.tag.value),
        ("lambda_min_entropy_printed", REFERENCE_LAMBDA_MIN[MeasureKind.ENTROPY]),
        ("lambda_min_concurrence", c.lambda_min),
        ("lambda_min_concurrence_tag", c.tag.value),
        ("lambda_min_concurrence_printed", REFERENCE_LAMBDA_MIN[MeasureKind.CONCURRENCE]),
        ("residual_min_entropy", s.residual_at_min),
        ("residual_min_concurrence", c.residual_at_min),
        ("integration_panels", max(s.integration_panels, c.integration_panels)),
    ])


def cmd_deviation(cfg):
    kind = cfg.measure
    alpha = deviation.alpha_min(kind, cfg.g, cfg.window)
    lam = np.linspace(*cfg.window, cfg.points)
    e = deviation.correlation_energy(lam, cfg.g)
    m = deviation.measure(kind, lam, cfg.g)
    d = deviation.residual(kind, alpha, lam, cfg.g)
    dd = np.gradient(d, lam)
    rel_m, rel_e = deviation.relative_deviations(kind, alpha, lam, cfg.g)
    text = table_csv(
        ["lambda", "E_corr", kind.value, "delta", "delta_sq", "d_delta_dlambda",
         "rel_to_measure", "rel_to_E_corr"],
        [lam, e, m, d, d * d, dd, rel_m, rel_e])

    def render(path):
        from .plotting import line_plot
        step = 0.06
        family = {f"alpha={alpha + k * step:.3f}": deviation.residual(kind, alpha + k * step, lam, cfg.g)
                  for k in range(-5, 6)}
        line_plot(path, lam, family, "lambda", f"E_corr - alpha*{kind.value}",
                  thick=f"alpha={alpha:.3f}")

    emit(cfg, text, render)


def cmd_hydrogen(cfg):
    kind = cfg.measure
    scan = hydrogen.equilibrium_lengths(kind, cfg.b_field, cfg.g, cfg.window)
    r_max, j_max = hydrogen.j_max_location()
    lines = [
        ("measure", kind.value),
        ("b_field", cfg.b_field),
        ("alpha", scan.alpha),
        ("lambda_min", scan.target_lambda),
        ("r_max", r_max),
        ("lambda_max", j_max / cfg.b_field),
        ("kind", scan.kind.value),
        ("roots", " ".join(fmt(r) for r in scan.roots) or "none"),
    ]
    nearest = scan.nearest_to(hydrogen.R_EXPERIMENT)
    if nearest is not None:
        lines += [("r_exp", hydrogen.R_EXPERIMENT), ("nearest_root", nearest[0]),
                  ("abs_error", nearest[1])]
    report(lines)

    r_lo, r_hi = parse_range(cfg.r_range_h, "r-range")
    r = np.linspace(r_lo, r_hi, cfg.points)
    j = hydrogen.j_of_r(r)
    lam = j / cfg.b_field
    d = deviation.residual(kind, scan.alpha, lam, cfg.g)
    text = table_csv(["r", "J", "lambda", "delta"], [r, j, lam, d])

    def render(path):
        from .plotting import line_plot
        line_plot(path, r, {"J(r) (Ry)": j, f"delta_{kind.value}": d}, "r (Bohr)",
                  title=f"B = {cfg.b_field:g} Ry")

    emit(cfg, text, render, stdout_if_no_out=False)


def cmd_contour(cfg):
    if cfg.nb < 2 or cfg.nr < 2:
        raise CliError("invalid_argument", "contour grid needs nb, nr >= 2")
    b = np.linspace(*parse_range(cfg.b_range, "b-range"), cfg.nb)
    r = np.linspace(*parse_range(cfg.r_range, "r-range"), cfg.nr)
    if b[0] <= 0.0 or r[0] < 0.0:
        raise CliError("invalid_argument", "contour ranges must be positive")
    grid = hydrogen.contour_grid(b, r, cfg.measure, cfg.g, cfg.window)
    buf = io.StringIO()
    buf.write("r\\B," + ",".join(fmt(v) for v in b) + "\n")
    for ri, row in zip(r, grid):
        buf.write(fmt(ri) + "," + ",".join(fmt(v) for v in row) + "\n")
    lo, hi = parse_range(cfg.levels, "levels")

    def render(path):
        from .plotting import contour_plot
        contour_plot(path, b, r, grid, np.linspace(lo, hi, cfg.n_levels),
                     title=f"minimized {cfg.measure.value} deviation")

    emit(cfg, buf.getvalue(), render)


def _require_input(cfg):
    if not cfg.input:
        raise CliError("invalid_argument", "--input PATH is required")
    try:
        return ci_bridge.ingest_series(cfg.input)
    except OSError as exc:
        raise CliError("io_error", f"{cfg.input}: {exc.strerror}") from None


def cmd_ci(cfg):
    series = _require_input(cfg)
    branch = ci_bridge.split_ascending_branch(series)
    lines = [
        ("samples", len(series)),
        ("alpha_squared", ci_bridge.alpha_over_r(series, "squared")),
        ("alpha_plain", ci_bridge.alpha_over_r(series, "plain")),
        ("alpha_selected", ci_bridge.alpha_over_r(series, cfg.denominator)),
        ("denominator", cfg.denominator),
        ("branch_length", len(branch)),
        ("branch_end_R", branch.abscissa[-1]),
    ]
    positive = branch[branch.e_corr > 0.0]
    if len(positive) >= 2:
        fit = ci_bridge.fit_log_linear(positive)
        lines += [("fit_a", fit.a_coef), ("fit_b", fit.b_coef), ("fit_rss", fit.rss)]
    else:
        lines.append(("fit", "skipped: fewer than 2 positive E_corr samples on the branch"))
    if series.has_purity:
        mixed = np.abs(series.trace_rho - series.trace_rho_sq) > 1e-10
        lines.append(("mixed_rows", int(mixed.sum())))
    report(lines)

    alpha = ci_bridge.alpha_over_r(series, cfg.denominator)
    delta = series.e_corr - alpha * series.entropy
    header = ["R_angstrom", "E_corr", "S_vN", "delta"]
    cols = [series.abscissa, series.e_corr, series.entropy, delta]
    if series.has_purity:
        header += ["Tr_rho", "Tr_rho2"]
        cols += [series.trace_rho, series.trace_rho_sq]
    text = table_csv(header, cols)

    def render(path):
        from .plotting import line_plot
        line_plot(path, series.abscissa, {"E_corr": series.e_corr, "S_vN": series.entropy,
                                          "delta": delta}, "R (Angstrom)")

    emit(cfg, text, render, stdout_if_no_out=False)


def cmd_fit(cfg):
    a, b = ci_bridge.expansion_coefficients()
    report([
        ("fitted_a", a),
        ("fitted_b", b),
        ("leading_order_a", ci_bridge.ANALYTIC_A),
        ("leading_order_b", ci_bridge.ANALYTIC_B),
        ("printed_a", ci_bridge.PRINTED_A),
        ("printed_slope", ci_bridge.PRINTED_SLOPE),
        ("a_matches_printed_a", str(abs(a - ci_bridge.PRINTED_A) < 1e-2).lower()),
        ("a_matches_printed_slope", str(abs(a - ci_bridge.PRINTED_SLOPE) < 1e-2).lower()),
    ])
    if cfg.input:
        series = ci_bridge.split_ascending_branch(_require_input(cfg))
        series = series[series.e_corr > 0.0]
        fit = ci_bridge.fit_log_linear(series)
        report([("data_fit_a", fit.a_coef), ("data_fit_b", fit.b_coef), ("data_fit_rss", fit.rss),
                ("b_sign_opposite_to_model", str(np.sign(fit.b_coef) != np.sign(b)).lower())])

    e = np.linspace(0.0, 0.5, cfg.points)[1:]
    exact = ci_bridge.s_of_ecorr(e)
    linear = ci_bridge.PRINTED_SLOPE * e
    loglin = a * e + b * e * np.log(e)
    text = table_csv(["E_corr", "S_vN", "linear", "log_linear"], [e, exact, linear, loglin])

    def render(path):
        from .plotting import line_plot
        line_plot(path, e, {"S_vN(E_corr)": exact, "linear": linear, "log-linear": loglin},
                  "E_corr (units of B)", "S_vN (bits)")

    emit(cfg, text, render, stdout_if_no_out=False)


COMMANDS = {
    "sweep": (cmd_sweep, "entropy, concurrence and E_corr over a coupling grid"),
    "alpha": (cmd_alpha, "optimal scalings and residual minima"),
    "deviation": (cmd_deviation, "residual profile at the optimal scaling"),
    "hydrogen": (cmd_hydrogen, "equilibrium lengths from the exchange coupling J(r)"),
    "contour": (cmd_contour, "residual over a (B, r) grid"),
    "ci": (cmd_ci, "process an external (R, E_corr, S_vN) series"),
    "fit": (cmd_fit, "small-E_corr expansion of S_vN(E_corr)"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=float)
    common.add_argument("--b-field", dest="b_field", type=float, help="field B in Ry")
    common.add_argument("--window", help="coupling window LO:HI")
    common.add_argument("--measure", choices=["entropy", "concurrence"])
    common.add_argument("--points", type=int)
    common.add_argument("--out", help="output path stem (.csv/.svg appended)")
    common.add_argument("--format", choices=["csv", "svg", "both"])
    common.add_argument("--config", help="key=value file; flags override it")

    parser = argparse.ArgumentParser(prog="h2entangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=help_)
            for name, (_, help_) in COMMANDS.items()}
    subs["contour"].add_argument("--b-range", dest="b_range")
    subs["contour"].add_argument("--r-range", dest="r_range")
    subs["contour"].add_argument("--nb", type=int)
    subs["contour"].add_argument("--nr", type=int)
    subs["contour"].add_argument("--levels", help="contour level window LO:HI")
    subs["contour"].add_argument("--n-levels", dest="n_levels", type=int)
    subs["hydrogen"].add_argument("--r-range", dest="r_range_h", help="r grid LO:HI (Bohr)")
    for name in ("ci", "fit"):
        subs[name].add_argument("--input")
    subs["ci"].add_argument("--denominator", choices=["squared", "plain"])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        COMMANDS[cfg.command][0](cfg)
    except CliError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2 if exc.code in ("invalid_argument", "config_error") else 1
    except H2EntangleError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"invalid_argument: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
