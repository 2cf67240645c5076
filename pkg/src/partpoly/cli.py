"""Command-line front end: ``partpoly <command> [options]``.

Exit status is 0 on success, 1 when a checked mathematical property fails
(a JSON witness goes to standard error) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import combinat, cyclo, genfun, roots
from .export import to_jsonable, write_json, write_rows_csv
from .genfun import OutOfScope, Statistic, TCORE_CRANK_WEIGHTS

__all__ = ["RunConfig", "UsageError", "parse_args", "execute", "main"]

COMMANDS = (
    "expand", "oracle", "divide", "congruence", "search",
    "stanton", "tcore", "roots", "discrepancy", "figure",
)
_FAMILIES = [s.value for s in Statistic]
_COUNT_FAMILIES = _FAMILIES + ["p", "spt", "pp", "tcore"]
_ORACLES = {
    Statistic.RANK: lambda n, t: combinat.oracle_rank(n),
    Statistic.CRANK: lambda n, t: combinat.oracle_crank(n),
    Statistic.SPT_CRANK: lambda n, t: combinat.oracle_spt_crank(n),
    Statistic.ORANK: lambda n, t: combinat.oracle_orank(n),
    Statistic.UNIMODAL: lambda n, t: combinat.oracle_unimodal(n),
    Statistic.STRONGLY_UNIMODAL: lambda n, t: combinat.oracle_unimodal(n, strict=True),
    Statistic.THOOK: lambda n, t: combinat.oracle_thook(t, n),
    Statistic.TCORE_CRANK: lambda n, t: combinat.oracle_tcore_crank(t, n),
}
_STANTON_SCOPE = {"rank": (5, 7), "crank": (5, 7, 11)}


class UsageError(ValueError):
    pass


class CheckFailed(Exception):
    """A property the command was asked to confirm does not hold."""

    def __init__(self, witness: dict):
        super().__init__(witness.get("context", "check failed"))
        self.witness = witness


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    t: int | None = None
    ell: int | None = None
    residue: int | None = None
    n: int | None = None
    n_max: int | None = None
    n_values: list[int] = field(default_factory=list)
    truncation: int | None = None
    tolerance: float = roots.DEFAULT_TOL
    out: str | None = None
    fmt: str | None = None
    kind: str | None = None
    divisor: str = "cyclotomic"
    printed: bool = False
    csv: str | None = None
    svg: str | None = None
    histogram: str | None = None
    bins: int = 21
    delta: float = roots.SPORADIC_DELTA
    jobs: int = 1

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not 0 < self.tolerance <= 1e-4:
            raise UsageError("tolerance must lie in (0, 1e-4]")
        if self.truncation is not None and self.n_max is not None and self.truncation < self.n_max:
            raise UsageError("truncation must be at least n-max")
        for name in ("n", "n_max", "truncation"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"{name.replace('_', '-')} must be non-negative")
        if self.jobs < 1:
            raise UsageError("jobs must be positive")
        if self.bins < 1:
            raise UsageError("bins must be positive")
        if not 0 < self.delta < 1:
            raise UsageError("delta must lie in (0, 1)")
        check = getattr(self, f"_check_{self.command}")
        check()
        return self

    # per-command parameter checks, run before any computation

    def _stat(self) -> Statistic:
        if self.family is None:
            raise UsageError(f"{self.command} needs --family")
        try:
            stat = Statistic(self.family)
        except ValueError:
            raise UsageError(f"unknown family {self.family!r}") from None
        self._check_t(stat)
        return stat

    def _check_t(self, stat: Statistic) -> None:
        if stat is Statistic.THOOK:
            if self.t is None or self.t < 2:
                raise UsageError("thook needs --t of at least 2")
        elif stat is Statistic.TCORE_CRANK:
            if self.t is None:
                raise UsageError("tcore-crank needs --t")
            if self.t not in TCORE_CRANK_WEIGHTS:
                raise UsageError(f"UnsupportedModulus: the t-core crank needs t in 5, 7, 11 (got {self.t})")
        elif self.t is not None:
            raise UsageError(f"--t does not apply to {stat.value}")

    def _need(self, *names: str) -> None:
        for name in names:
            if getattr(self, name) is None:
                raise UsageError(f"{self.command} needs --{name.replace('_', '-')}")

    def _need_ell(self, prime: bool, least: int = 2) -> None:
        self._need("ell")
        if self.ell < least or (prime and not cyclo.is_prime(self.ell)):
            raise UsageError(f"--mod must be {'a prime' if prime else f'at least {least}'} (got {self.ell})")

    def _check_expand(self):
        self._stat()
        self._need("n_max")

    def _check_oracle(self):
        stat = self._stat()
        if stat not in _ORACLES:
            raise UsageError(f"no enumeration oracle for {stat.value}")
        self._need("n")

    def _check_divide(self):
        self._stat()
        self._need("residue", "n_max")
        self._need_ell(prime=True)

    def _check_congruence(self):
        if self.family not in _COUNT_FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        self._need("residue", "n_max")
        self._need_ell(prime=False)
        if self.family in ("tcore", "tcore-crank"):
            if self.t is None:
                self.t = self.ell
            self._check_t(Statistic.TCORE_CRANK)
        elif self.family != "thook" and self.t is not None:
            raise UsageError(f"--t does not apply to {self.family}")

    def _check_search(self):
        self._stat()
        self._need("n_max")
        self._need_ell(prime=False, least=1)
        if self.divisor not in ("cyclotomic", "phi2-w2"):
            raise UsageError(f"unknown divisor {self.divisor!r}")
        if self.n_max < self.ell:
            raise UsageError("n-max must be at least the modulus")

    def _check_stanton(self):
        self._need("kind", "ell", "n_max")
        kind = self.kind.lower()
        if kind not in _STANTON_SCOPE or self.ell not in _STANTON_SCOPE[kind]:
            raise UsageError(f"OutOfScope: no modified {self.kind} polynomial for mod {self.ell}")
        self.kind = kind

    def _check_tcore(self):
        self._need("t", "n")
        self._check_t(Statistic.TCORE_CRANK)

    def _check_roots(self):
        stat = self._stat()
        if stat is Statistic.TCORE_CRANK:
            raise UsageError("tcore-crank has no principal polynomial")
        self._need("n")

    def _check_discrepancy(self):
        stat = self._stat()
        if stat is Statistic.TCORE_CRANK:
            raise UsageError("tcore-crank has no principal polynomial")
        if not self.n_values:
            raise UsageError("discrepancy needs --n-values")

    def _check_figure(self):
        self._check_roots()
        self._need("out")
        if self.fmt is None:
            self.fmt = Path(self.out).suffix.lstrip(".").lower() or "svg"
        if self.fmt not in ("svg", "csv"):
            raise UsageError("figure format must be svg or csv")


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file pre-setting any flag")
    common.add_argument("--jobs", type=int, help="worker cap (default: $PARTPOLY_JOBS or all cores)")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json", "svg"))
    common.add_argument("--tol", "--tolerance", dest="tolerance", type=float, default=roots.DEFAULT_TOL)

    parser = argparse.ArgumentParser(prog="partpoly", description="Exact partition polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_)

    fam = dict(choices=_FAMILIES, help="statistic")

    p = add("expand", "coefficient rows of a generating function as CSV")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--printed", action="store_true", help="Wagner product exactly as printed")

    p = add("oracle", "compare an expander row with brute-force enumeration")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)

    p = add("divide", "check Phi_mod divides every row n = residue (mod)")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--mod", dest="ell", type=int)
    p.add_argument("--residue", type=int)
    p.add_argument("--n-max", type=int)

    p = add("congruence", "check value(n) = 0 (mod) along a progression")
    p.add_argument("--family", choices=_COUNT_FAMILIES)
    p.add_argument("--t", type=int)
    p.add_argument("--mod", dest="ell", type=int)
    p.add_argument("--residue", type=int)
    p.add_argument("--n-max", type=int)

    p = add("search", "list residues whose rows are all divisible")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--mod", dest="ell", type=int)
    p.add_argument("--divisor", default="cyclotomic", choices=("cyclotomic", "phi2-w2"))
    p.add_argument("--n-max", type=int)

    p = add("stanton", "check the modified rank/crank polynomials")
    p.add_argument("--kind", choices=("rank", "crank"))
    p.add_argument("--mod", dest="ell", type=int)
    p.add_argument("--n-max", type=int)

    p = add("tcore", "t-core counts per crank residue")
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)

    p = add("roots", "roots of a principal polynomial")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.add_argument("--bins", type=int, default=21)
    p.add_argument("--delta", type=float, default=roots.SPORADIC_DELTA)

    p = add("discrepancy", "star discrepancy and log L / d along several n")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--n-values", type=_int_list, default=[])

    p = add("figure", "scatter plot (SVG) or table (CSV) of roots")
    p.add_argument("--family", **fam)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--histogram", help="also write the modulus histogram as SVG")
    p.add_argument("--bins", type=int, default=21)
    p.add_argument("--delta", type=float, default=roots.SPORADIC_DELTA)
    return parser


def _config_path(argv: Sequence[str]) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _read_config(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, command: str, values: dict[str, str]) -> None:
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    sub = subparsers.choices[command]
    by_dest = {a.dest: a for a in sub._actions}
    aliases = {"mod": "ell", "format": "fmt", "tol": "tolerance"}
    defaults = {}
    for key, raw in values.items():
        dest = aliases.get(key, key)
        action = by_dest.get(dest)
        if action is None:
            raise UsageError(f"config key {key!r} does not apply to {command}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[dest] = raw.lower() in ("1", "true", "yes", "on")
            continue
        try:
            value = action.type(raw) if action.type else raw
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError(f"config key {key!r}: bad value {raw!r}") from None
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"config key {key!r}: {raw!r} is not one of {sorted(action.choices)}")
        defaults[dest] = value
    sub.set_defaults(**defaults)


def _default_jobs() -> int:
    env = os.environ.get("PARTPOLY_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"PARTPOLY_JOBS must be an integer (got {env!r})") from None
    return os.cpu_count() or 1


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse and validate; raises :class:`UsageError` (or exits 2 via argparse)."""
    argv = list(argv)
    parser = _build_parser()
    cfg_path = _config_path(argv)
    if cfg_path is not None:
        command = next((a for a in argv if a in COMMANDS), None)
        if command is None:
            parser.error("a command is required")
        _apply_config(parser, command, _read_config(cfg_path))
    ns = vars(parser.parse_args(argv))
    ns.pop("config", None)
    if ns.get("jobs") is None:
        ns["jobs"] = _default_jobs()
    known = {f for f in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**{k: v for k, v in ns.items() if k in known and v is not None})
    return cfg.validate()


# ---------------------------------------------------------------------------
# execution


def _emit(cfg: RunConfig, payload: Any) -> None:
    if cfg.out and cfg.command != "figure":
        with open(cfg.out, "w") as fh:
            write_json(payload, fh)
    else:
        write_json(payload, sys.stdout)


def _witness(cfg: RunConfig, n, expected, actual, context: str) -> CheckFailed:
    return CheckFailed({
        "command": cfg.command,
        "family": cfg.family or cfg.kind,
        "n": n,
        "expected": to_jsonable(expected),
        "actual": to_jsonable(actual),
        "context": context,
    })


def _run_expand(cfg: RunConfig) -> None:
    T = cfg.truncation if cfg.truncation is not None else cfg.n_max
    rows = genfun.expand(cfg.family, T, cfg.t, printed=cfg.printed)[: cfg.n_max + 1]
    pairs = list(enumerate(rows))
    if cfg.fmt == "json":
        _emit(cfg, {"family": cfg.family, "t": cfg.t, "rows": {str(n): r for n, r in pairs}})
    elif cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            write_rows_csv(pairs, fh)
    else:
        write_rows_csv(pairs, sys.stdout)


def _run_oracle(cfg: RunConfig) -> None:
    stat = Statistic(cfg.family)
    if stat is Statistic.CRANK and cfg.n == 0:
        raise UsageError("the combinatorial crank starts at n = 1")
    if stat is Statistic.SPT_CRANK and cfg.n == 0:
        raise UsageError("the spt-crank starts at n = 1")
    series = genfun.stat_table(stat, cfg.n, cfg.t).counts
    oracle = _ORACLES[stat](cfg.n, cfg.t).counts
    if series != oracle:
        raise _witness(cfg, cfg.n, oracle, series, "generating function differs from enumeration")
    _emit(cfg, {"family": stat.value, "n": cfg.n, "t": cfg.t, "counts": series, "equal": True})


def _run_divide(cfg: RunConfig) -> None:
    rows = genfun.expand(cfg.family, cfg.n_max, cfg.t)
    start = 1 if cfg.family == Statistic.SPT_CRANK.value else 0
    reports = []
    for n in range(cfg.residue % cfg.ell, cfg.n_max + 1, cfg.ell):
        if n < start:
            continue
        rep = cyclo.check_divisibility(rows[n], cfg.ell, cfg.family, n)
        if not rep.divisible:
            raise _witness(cfg, n, f"divisible by Phi_{cfg.ell}", rep.to_dict(), "row not divisible")
        reports.append(rep)
    _emit(cfg, [r.to_dict() for r in reports])


def _run_congruence(cfg: RunConfig) -> None:
    entries = cyclo.congruence_sweep(cfg.family, cfg.ell, cfg.residue, cfg.n_max, cfg.t)
    for e in entries:
        if e.residue:
            raise _witness(cfg, e.n, 0, {"value": e.value, "residue": e.residue},
                           f"value not divisible by {cfg.ell}")
    _emit(cfg, {
        "family": cfg.family, "mod": cfg.ell, "residue": cfg.residue, "n_max": cfg.n_max,
        "checked": len(entries), "values": {str(e.n): e.value for e in entries},
    })


def _run_search(cfg: RunConfig) -> None:
    rep = cyclo.search_progressions(cfg.family, cfg.ell, cfg.divisor, cfg.n_max, cfg.t)
    _emit(cfg, rep)


def _run_stanton(cfg: RunConfig) -> None:
    try:
        reports = cyclo.check_stanton_range(cfg.kind, cfg.ell, range(cfg.n_max + 1))
    except cyclo.CertificateFailure as exc:
        w = exc.witness
        raise _witness(cfg, w["n"], w["expected"], w["actual"], str(exc)) from None
    _emit(cfg, {
        "kind": cfg.kind, "mod": cfg.ell, "n_max": cfg.n_max,
        "reports": [r.to_dict() for r in reports],
    })


def _run_tcore(cfg: RunConfig) -> None:
    table = genfun.tcore_crank_table(cfg.t, cfg.n)
    counts = [table.counts.get(m, 0) for m in range(cfg.t)]
    _emit(cfg, {"t": cfg.t, "n": cfg.n, "counts": counts, "total": sum(counts),
                "equidistributed": len(set(counts)) == 1})


def _solve(cfg: RunConfig, n: int):
    f = roots.principal_poly(cfg.family, n, cfg.t)
    return f, roots.solve_roots(f, cfg.tolerance)


def _root_summary(f, r, cfg: RunConfig) -> dict:
    L2, log_ratio = roots.erdos_turan_L(f)
    prof = roots.radial_profile(r, cfg.bins, cfg.delta)
    prod_err, sum_err = roots.vieta_errors(f, r)
    return {
        "family": f.family, "n": f.n, "t": f.t, "degree": f.degree, "doubled": f.doubled,
        "residual_scale": r.residual_scale, "precision": r.precision,
        "star_discrepancy": roots.star_discrepancy(r),
        "L_squared": f"{L2.numerator}/{L2.denominator}", "log_L_over_d": log_ratio,
        "vieta_product_error": prod_err, "vieta_sum_error": sum_err,
        "radial_profile": asdict(prof) | {"bimodal": prof.bimodal},
    }


def _check_vieta(cfg, f, r):
    prod_err, sum_err = roots.vieta_errors(f, r)
    if prod_err > 1e-6 or sum_err > 1e-6:
        raise _witness(cfg, f.n, "Vieta errors within 1e-6",
                       {"product": prod_err, "sum": sum_err}, "root set fails Vieta check")


def _run_roots(cfg: RunConfig) -> None:
    f, r = _solve(cfg, cfg.n)
    _check_vieta(cfg, f, r)
    if cfg.csv:
        roots.figure_export(r, "csv", cfg.csv)
    if cfg.svg:
        roots.figure_export(r, "svg", cfg.svg, title=_title(f))
    _emit(cfg, _root_summary(f, r, cfg))


def _title(f) -> str:
    return f"{f.family}{'' if f.t is None else f' t={f.t}'} n={f.n}"


def _run_discrepancy(cfg: RunConfig) -> None:
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        solved = list(pool.map(lambda n: _solve(cfg, n), cfg.n_values))
    rows = []
    for f, r in solved:
        _check_vieta(cfg, f, r)
        rows.append({
            "n": f.n, "degree": f.degree, "star_discrepancy": roots.star_discrepancy(r),
            "log_L_over_d": roots.erdos_turan_L(f)[1], "residual_scale": r.residual_scale,
        })
    ds = [row["star_discrepancy"] for row in rows]
    ls = [row["log_L_over_d"] for row in rows]
    _emit(cfg, {
        "family": cfg.family, "t": cfg.t, "rows": rows,
        "discrepancy_decreasing": all(a > b for a, b in zip(ds, ds[1:])),
        "log_L_decreasing": all(a > b for a, b in zip(ls, ls[1:])),
    })


def _run_figure(cfg: RunConfig) -> None:
    f, r = _solve(cfg, cfg.n)
    roots.figure_export(r, cfg.fmt, cfg.out, title=_title(f))
    if cfg.histogram:
        from .plotting import save_radial_histogram

        save_radial_histogram(roots.radial_profile(r, cfg.bins, cfg.delta), cfg.histogram, title=_title(f))


_RUNNERS = {name: globals()[f"_run_{name}"] for name in COMMANDS}


def execute(cfg: RunConfig) -> int:
    try:
        _RUNNERS[cfg.command](cfg)
    except CheckFailed as exc:
        json.dump(exc.witness, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return 1
    except (roots.ZeroConstantTerm, OutOfScope, genfun.UnsupportedModulus, UsageError) as exc:
        print(f"partpoly: error: {exc}", file=sys.stderr)
        return 2
    except roots.NoConvergence as exc:
        json.dump({
            "command": cfg.command, "family": cfg.family, "n": cfg.n,
            "expected": f"residual <= {cfg.tolerance}", "actual": exc.worst_residual,
            "context": str(exc),
        }, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"partpoly: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    try:
        return execute(cfg)
    except OSError as exc:
        print(f"partpoly: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
