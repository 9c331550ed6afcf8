"""Command-line front end: ``gsfock {check,gram,fock,report} <config.json>``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid input
or environment.

Config and report files are JSON; complex numbers are ``[re, im]`` pairs and
matrices are row-major with row = output index, column = input index.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import multilinear as ml
from .exceptions import ConstructionError, GSFockError
from .fock_space import gram, positivity_report, quotient_structure
from .statistics_ops import (
    BraidOperator,
    check_braid_relation,
    check_consistency,
    check_cross_structure,
    check_norm_bound,
    check_yang_baxter,
    tilde,
)
from .statistics_zoo import (
    AbelianGroup,
    Bicharacter,
    Grading,
    StatisticsSpec,
    family_boltzmann,
    family_boson,
    family_color,
    family_fermion,
    family_quon,
    load_custom,
    parity_bicharacter,
)
from .wick_ops import (
    build_quotient_representation,
    build_representation,
    number_operator_spectrum,
    verify_adjointness,
    verify_brel,
    verify_crel,
    verify_representation_theorem,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

MAX_DIMENSION = 6
MAX_NMAX = 8
MAX_LEVEL = 65536

FAMILY_KEYS = {
    "boltzmann": {"braid"},
    "boson": {"braid"},
    "fermion": {"braid"},
    "quon": {"q", "braid"},
    "color": {"group", "degrees", "epsilon", "braid"},
    "custom": {"cross", "braid"},
}
TOP_KEYS = {"dimension", "statistics", "nmax", "tolerance"}


class ConfigError(GSFockError):
    """Config text is not valid JSON or violates the schema; message names the location."""


# -- config -----------------------------------------------------------------


@dataclass
class RunConfig:
    dimension: int
    statistics: dict
    spec: StatisticsSpec
    nmax: int = 4
    tolerance: float = 1e-10
    emit_matrix: bool = False
    allow_inconsistent: bool = False

    def echo(self) -> dict:
        return {
            "dimension": self.dimension,
            "statistics": self.statistics,
            "nmax": self.nmax,
            "tolerance": self.tolerance,
        }


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _complex_entry(x, where: str) -> complex:
    if _is_num(x):
        val = complex(x)
    elif isinstance(x, list) and len(x) == 2 and all(_is_num(v) for v in x):
        val = complex(x[0], x[1])
    else:
        raise ConfigError(f"{where}: expected a number or an [re, im] pair")
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise ConfigError(f"{where}: entries must be finite")
    return val


def _complex_matrix(data, size: int, where: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != size:
        raise ConfigError(f"{where}: expected {size} rows")
    out = np.zeros((size, size), dtype=complex)
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != size:
            raise ConfigError(f"{where}[{r}]: expected {size} entries")
        for c, x in enumerate(row):
            out[r, c] = _complex_entry(x, f"{where}[{r}][{c}]")
    return out


def _build_spec(N: int, stats: dict) -> StatisticsSpec:
    family = stats["family"]
    if family == "boltzmann":
        spec = family_boltzmann(N)
    elif family == "boson":
        spec = family_boson(N)
    elif family == "fermion":
        spec = family_fermion(N)
    elif family == "quon":
        if "q" not in stats or not _is_num(stats["q"]):
            raise ConfigError("statistics.q: quon family requires a numeric q")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            spec = family_quon(N, stats["q"])
    elif family == "color":
        spec = _build_color(N, stats)
    else:
        if "cross" not in stats:
            raise ConfigError("statistics.cross: custom family requires a cross matrix")
        spec = load_custom(_complex_matrix(stats["cross"], N * N, "statistics.cross"))
    if "braid" in stats:
        spec.braid = BraidOperator(_complex_matrix(stats["braid"], N * N, "statistics.braid"))
        spec.parameters["forced_braid"] = True
    return spec


def _build_color(N: int, stats: dict) -> StatisticsSpec:
    group_data = stats.get("group")
    if not isinstance(group_data, list) or not group_data or not all(
        _is_int(m) and m >= 1 for m in group_data
    ):
        raise ConfigError("statistics.group: expected a non-empty list of positive cyclic orders")
    try:
        group = AbelianGroup(tuple(group_data))
    except GSFockError as exc:
        raise ConfigError(f"statistics.group: {exc}") from None
    degrees = stats.get("degrees")
    if not isinstance(degrees, list) or len(degrees) != N:
        raise ConfigError(f"statistics.degrees: expected {N} degrees (one per generator)")
    for k, d in enumerate(degrees):
        if not isinstance(d, list) or len(d) != len(group.factors) or not all(map(_is_int, d)):
            raise ConfigError(
                f"statistics.degrees[{k}]: expected {len(group.factors)} integers"
            )
    if "epsilon" in stats:
        table = _complex_matrix(stats["epsilon"], group.order, "statistics.epsilon")
        epsilon = Bicharacter(group, table)
    else:
        epsilon = parity_bicharacter(group)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            return family_color(group, epsilon, Grading(tuple(tuple(d) for d in degrees)))
        except GSFockError as exc:
            raise ConfigError(f"statistics.epsilon: {exc}") from None


def parse_config(text: str, tolerance: float | None = None) -> RunConfig:
    """Parse and validate config JSON. Raises ConfigError with a location message."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError("top level: expected a JSON object")
    unknown = sorted(set(data) - TOP_KEYS)
    if unknown:
        raise ConfigError(f"top level: unknown keys {unknown}")

    N = data.get("dimension")
    if not _is_int(N) or not 1 <= N <= MAX_DIMENSION:
        raise ConfigError(f"dimension: expected an integer in 1..{MAX_DIMENSION}")
    nmax = data.get("nmax", 4)
    if not _is_int(nmax) or not 1 <= nmax <= MAX_NMAX:
        raise ConfigError(f"nmax: expected an integer in 1..{MAX_NMAX}")
    if N**nmax > MAX_LEVEL:
        raise ConfigError(f"nmax: dimension**nmax = {N**nmax} exceeds {MAX_LEVEL}")
    tol = data.get("tolerance", 1e-10)
    if tolerance is not None:
        tol = tolerance
    if not _is_num(tol) or not tol > 0 or not math.isfinite(tol):
        raise ConfigError("tolerance: expected a positive finite number")

    stats = data.get("statistics")
    if not isinstance(stats, dict):
        raise ConfigError("statistics: expected an object")
    family = stats.get("family")
    if family not in FAMILY_KEYS:
        raise ConfigError(f"statistics.family: expected one of {sorted(FAMILY_KEYS)}")
    unknown = sorted(set(stats) - FAMILY_KEYS[family] - {"family"})
    if unknown:
        raise ConfigError(f"statistics: unknown keys {unknown} for family {family!r}")
    try:
        spec = _build_spec(N, stats)
    except ConfigError:
        raise
    except GSFockError as exc:
        raise ConfigError(f"statistics: {exc}") from None
    if spec.N != N:
        raise ConfigError(f"statistics: operators have N={spec.N}, dimension is {N}")
    return RunConfig(N, stats, spec, nmax, float(tol))


# -- report assembly ----------------------------------------------------------


@dataclass
class _Checks:
    tol: float
    items: list[dict] = field(default_factory=list)

    def add(self, name, residual, passed=None, severity="error", scale=1.0) -> dict:
        residual = float(residual)
        if passed is None:
            passed = residual <= self.tol * max(1.0, scale)
        item = {"name": name, "residual": residual, "pass": bool(passed), "severity": severity}
        self.items.append(item)
        return item


def _matrix_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def structural_section(cfg: RunConfig) -> list[dict]:
    spec, tol = cfg.spec, cfg.tolerance
    T, B = spec.cross, spec.braid
    Tt = tilde(T)
    scale = max(ml.max_abs(T.matrix), ml.max_abs(B.matrix) if B is not None else 0.0)
    checks = _Checks(tol)
    cs = check_cross_structure(T, tol)
    checks.add("cross_hermitian", cs.hermitian_residual, cs.hermitian, "warning")
    checks.add("cross_invertible", cs.min_singular_value, cs.invertible, "warning")
    norm, ok = check_norm_bound(Tt, tol)
    checks.add("tilde_norm_bound", norm, ok, "warning")
    checks.add("yang_baxter", check_yang_baxter(Tt), scale=scale**3)
    if B is not None:
        checks.add("braid_relation", check_braid_relation(B), scale=scale**3)
        cons = check_consistency(T, B, tol)
        checks.add("consistency_mixed_yang_baxter", cons.mixed_yb_residual, scale=scale**3)
        checks.add("consistency_projector", cons.projector_residual, scale=scale**2)
    return checks.items


def level_section(cfg: RunConfig, n: int) -> tuple[dict, list[dict]]:
    Tt = tilde(cfg.spec.cross)
    level = gram(Tt, n, cfg.tolerance)
    checks = _Checks(cfg.tolerance)
    checks.add(f"gram_hermitian[n={n}]", level.hermitian_residual, level.consistent)
    out = {
        "n": n,
        "size": level.size,
        "hermitian_residual": level.hermitian_residual,
        "kernel_dim": level.kernel_dim,
    }
    if level.consistent:
        pos = positivity_report(level, cfg.tolerance)
        out.update(
            min_eigenvalue=pos.min_eigenvalue,
            max_eigenvalue=pos.max_eigenvalue,
            positive_definite=pos.positive_definite,
            positive_semidefinite=pos.positive_semidefinite,
            positivity="definite"
            if pos.positive_definite
            else "semidefinite"
            if pos.positive_semidefinite
            else "indefinite",
        )
        checks.add(
            f"gram_positive_semidefinite[n={n}]",
            pos.min_eigenvalue,
            pos.positive_semidefinite,
            "warning",
        )
    if cfg.emit_matrix:
        out["matrix"] = _matrix_json(level.gram)
    return out, checks.items


def quotient_section(cfg: RunConfig):
    """Per-level quotient data, the levels themselves, and checks."""
    spec = cfg.spec
    if spec.braid is None:
        if spec.name == "quon" and abs(spec.parameters.get("q", 0.0)) < 1:
            note = "no nontrivial braid quotient exists"
        else:
            note = "no braid operator supplied"
        return {"braid": False, "note": note, "levels": []}, None, []
    Tt = tilde(spec.cross)
    checks = _Checks(cfg.tolerance)
    levels = [quotient_structure(Tt, spec.braid, n, cfg.tolerance) for n in range(cfg.nmax + 1)]
    rows = []
    for lv in levels[1:]:
        row = {
            "n": lv.n,
            "ideal_dim": lv.ideal_dim,
            "quotient_dim": lv.quotient_dim,
            "well_defined": lv.well_defined,
            "containment_residual": lv.containment_residual,
        }
        if lv.quotient_dim:
            w = np.linalg.eigvalsh((lv.induced_gram + ml.adjoint(lv.induced_gram)) / 2)
            row["induced_min_eigenvalue"] = float(w.min())
            row["induced_positive_definite"] = bool(w.min() > cfg.tolerance * max(1.0, w.max()))
        rows.append(row)
        checks.add(f"quotient_well_defined[n={lv.n}]", lv.containment_residual, lv.well_defined)
    data = {"braid": True, "levels": rows, "dims": [lv.quotient_dim for lv in levels[1:]]}
    return data, levels, checks.items


def operator_section(cfg: RunConfig, qlevels=None) -> tuple[dict, list[dict]]:
    spec, tol, nmax = cfg.spec, cfg.tolerance, cfg.nmax
    T, B = spec.cross, spec.braid
    rep = build_representation(T, nmax)
    scale = ml.max_abs(rep.gram(nmax))
    checks = _Checks(tol)
    checks.add("adjointness", verify_adjointness(rep, nmax, tol), scale=scale)
    checks.add("crel", verify_crel(rep, nmax, tol, convention="cross"), scale=scale)
    checks.add("representation_theorem", verify_representation_theorem(rep, nmax, tol), scale=scale)
    out = {
        "convention": "cross",
        "literal_convention_crel_residual": verify_crel(rep, nmax, tol, convention="literal"),
    }
    rep.convention = "cross"
    if B is not None:
        try:
            q = build_quotient_representation(rep, B, nmax, tol, levels=qlevels)
        except ConstructionError as exc:
            worst = max((lv.containment_residual for lv in qlevels or []), default=math.inf)
            checks.add("brel", worst, False)
            out["brel_error"] = str(exc)
        else:
            br = verify_brel(rep, B, nmax, tol, quotient=q)
            checks.add("brel_annihilation", br.aa_residual, scale=scale)
            checks.add("brel_creation", br.cc_residual, scale=scale)
            checks.add("brel_crel", br.crel_residual, scale=scale)
            checks.add("quotient_descent", br.descent_residual, scale=scale)
            spectrum = number_operator_spectrum(rep, B, nmax, tol, quotient=q)
            dev = float(np.max(np.abs(spectrum - np.round(spectrum.real)))) if spectrum.size else 0.0
            checks.add("number_operator_integer_spectrum", dev, severity="warning")
            out["number_operator_spectrum"] = [float(x) for x in np.round(spectrum.real, 12)]
            out["quotient_dims"] = list(br.quotient_dims[1:])
    return out, checks.items


def _verdict(report: dict) -> dict:
    failed = [
        c["name"]
        for c in report["checks"]
        if c["severity"] == "error" and not c["pass"]
    ]
    report["failed_checks"] = failed
    report["verdict"] = "fail" if failed else "pass"
    return report


def run_check(cfg: RunConfig) -> dict:
    return _verdict({"config": cfg.echo(), "command": "check", "checks": structural_section(cfg)})


def run_gram(cfg: RunConfig, level: int) -> dict:
    if not 1 <= level <= cfg.nmax:
        raise ConfigError(f"--level: expected 1..{cfg.nmax}, got {level}")
    data, checks = level_section(cfg, level)
    return _verdict({"config": cfg.echo(), "command": "gram", "level": data, "checks": checks})


def run_fock(cfg: RunConfig) -> dict:
    structural = structural_section(cfg)
    report = {"config": cfg.echo(), "command": "fock", "checks": list(structural)}
    blocked = any(c["severity"] == "error" and not c["pass"] for c in structural)
    if blocked and not cfg.allow_inconsistent:
        report["operators"] = {"skipped": "structural checks failed (use --allow-inconsistent)"}
        return _verdict(report)
    qdata, qlevels, qchecks = quotient_section(cfg)
    ops, ochecks = operator_section(cfg, qlevels)
    report["quotient"] = qdata
    report["operators"] = ops
    report["checks"] += qchecks + ochecks
    return _verdict(report)


def run_report(cfg: RunConfig) -> dict:
    structural = structural_section(cfg)
    report = {"config": cfg.echo(), "command": "report", "checks": list(structural)}
    levels = []
    for n in range(1, cfg.nmax + 1):
        data, checks = level_section(cfg, n)
        levels.append(data)
        report["checks"] += checks
    report["levels"] = levels
    qdata, qlevels, qchecks = quotient_section(cfg)
    report["quotient"] = qdata
    report["checks"] += qchecks
    blocked = any(c["severity"] == "error" and not c["pass"] for c in structural)
    if blocked and not cfg.allow_inconsistent:
        report["operators"] = {"skipped": "structural checks failed (use --allow-inconsistent)"}
    else:
        ops, ochecks = operator_section(cfg, qlevels)
        report["operators"] = ops
        report["checks"] += ochecks
    return _verdict(report)


# -- deterministic JSON -------------------------------------------------------


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps(str(x))
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [
            f"{pad}{json.dumps(str(k))}: {_emit(obj[k], indent, level + 1)}" for k in sorted(obj)
        ]
        return "{\n" + ",\n".join(parts) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        parts = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_report(report: dict) -> str:
    """Byte-stable JSON: sorted keys, floats at 17 significant digits."""
    return _emit(report, 2, 0) + "\n"


def summary_lines(report: dict) -> list[str]:
    lines = []
    for c in report["checks"]:
        status = "PASS" if c["pass"] else ("WARN" if c["severity"] == "warning" else "FAIL")
        lines.append(f"{status}  {c['name']:<40} residual={c['residual']:.3e}")
    lines.append(f"verdict: {report['verdict']}")
    return lines


# -- entry point --------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsfock", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("config", type=Path)
        sp.add_argument("--tolerance", type=float, default=None)
        sp.add_argument("--allow-inconsistent", action="store_true")

    common(sub.add_parser("check", help="structural checks on T and B"))
    g = sub.add_parser("gram", help="Gram matrix of one level")
    common(g)
    g.add_argument("--level", type=int, required=True)
    g.add_argument("--emit-matrix", action="store_true")
    common(sub.add_parser("fock", help="operator representation and commutation relations"))
    r = sub.add_parser("report", help="run everything and write a JSON report")
    common(r)
    r.add_argument("-o", "--output", type=Path, required=True)
    r.add_argument("--emit-matrix", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        text = args.config.read_text(encoding="utf-8")
        cfg = parse_config(text, args.tolerance)
        cfg.allow_inconsistent = args.allow_inconsistent
        cfg.emit_matrix = getattr(args, "emit_matrix", False)
        if args.command == "check":
            report = run_check(cfg)
        elif args.command == "gram":
            report = run_gram(cfg, args.level)
        elif args.command == "fock":
            report = run_fock(cfg)
        else:
            report = run_report(cfg)
        if args.command == "report":
            args.output.write_text(dumps_report(report), encoding="utf-8")
            print("\n".join(summary_lines(report)))
        else:
            sys.stdout.write(dumps_report(report))
            print("\n".join(summary_lines(report)), file=sys.stderr)
    except (ConfigError, GSFockError, OSError, UnicodeDecodeError) as exc:
        print(f"gsfock: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # never crash with a traceback on bad input
        print(f"gsfock: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
