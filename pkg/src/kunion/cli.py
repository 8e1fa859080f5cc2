"""Command-line entry point.

Every run prints (or writes) its full configuration followed by the
records produced, and exits with 0 (all checks pass), 1 (a check failed),
2 (inconclusive) or 3 (usage error).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .numerics import ParameterError
from .reports import FAIL, INCONCLUSIVE, PASS, SCHEMA_VERSION, PaperCheckReport

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

PREC_ENV = "KUNION_PREC"
DEFAULT_PREC = "1e-10"

COMMANDS = (
    "table", "poly", "roots", "discriminants", "verify-fk", "verify-m", "verify-appendix",
    "verify-constants", "verify-entropy-lemma", "simulate", "bound",
)


@dataclass
class RunConfig:
    command: str
    k: list = field(default_factory=list)
    kmax: int | None = None
    precision: str = DEFAULT_PREC
    grid: int = 100_000
    exclusion: float = 1e-3
    trials: int = 10_000
    samples: int = 100_000
    seed: int = 0
    n: int | None = None
    eps: float = 0.0
    family_size: int = 1024
    method: str = "sizes"
    format: str = "text"
    output: str | None = None
    timestamp: bool = True


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _k_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS,
                        help="text (default), JSON lines or CSV")
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write to this file instead of stdout")
    common.add_argument("--prec", dest="precision", default=argparse.SUPPRESS,
                        help=f"decimal tolerance for constants (default ${PREC_ENV} or {DEFAULT_PREC})")
    common.add_argument("--no-timestamp", dest="timestamp", action="store_false", default=argparse.SUPPRESS,
                        help="omit timestamp and elapsed time so reruns are byte-identical")

    p = _Parser(prog="kunion", description="Exact and certified checks for almost k-union closed set systems.",
                parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    c = cmd("table", "constants phi, psi, z, alpha, mu")
    c.add_argument("--kmax", type=int)
    c.add_argument("--k", type=_k_list, help="comma list or range, e.g. 2-8,16")

    for name, help_ in (("poly", "print p_k with a + b*alpha coefficients"),
                        ("roots", "roots of p_k in (0, 1), k <= 8"),
                        ("discriminants", "discriminant signs of the derivatives of p_k")):
        c = cmd(name, help_)
        c.add_argument("--k", type=_k_list, default=[4])

    c = cmd("verify-fk", "nonnegativity of f_k on [0, 1]")
    c.add_argument("--k", type=_k_list, default=[2, 3, 4])
    c.add_argument("--grid", type=int, default=100_000)
    c.add_argument("--exclusion", type=float, default=1e-3)

    c = cmd("verify-m", "M_k minimisation and the sampled product inequalities")
    c.add_argument("--k", type=_k_list, default=[2, 3, 4])
    c.add_argument("--samples", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=0)

    c = cmd("verify-appendix", "derivatives, sign evaluations and patterns of p_3, p_4")
    c.add_argument("--k", type=_k_list, default=[4])

    c = cmd("verify-constants", "constants table and the z_k, mu_k inequalities")
    c.add_argument("--kmax", type=int, default=10_000)

    c = cmd("verify-entropy-lemma", "entropy lemma on small exhaustive instances")
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--k", type=_k_list, default=[3])
    c.add_argument("--trials", type=int, default=10_000)
    c.add_argument("--seed", type=int, default=0)

    c = cmd("simulate", "Monte Carlo of the extremal family")
    c.add_argument("--n", type=int, default=2000)
    c.add_argument("--k", type=_k_list, default=[3])
    c.add_argument("--trials", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--method", choices=("sizes", "bitmask"), default="sizes")

    c = cmd("bound", "frequency bound z_k - delta")
    c.add_argument("--k", type=_k_list, default=[3])
    c.add_argument("--eps", type=float, default=0.0)
    c.add_argument("--family-size", type=int, default=1024)
    return p


def parse_config(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    cfg = RunConfig(command=ns.pop("command"))
    cfg.precision = os.environ.get(PREC_ENV, DEFAULT_PREC)
    for key, value in ns.items():
        if value is not None:
            setattr(cfg, key, value)
    if cfg.command == "table" and not cfg.k:
        cfg.k = list(range(2, cfg.kmax + 1)) if cfg.kmax else [2, 3, 4, 5, 6, 7, 8, 16]
    return cfg


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _ks(cfg, lo=2, hi=None):
    for k in cfg.k:
        if k < lo or (hi is not None and k > hi):
            raise UsageError(f"k={k} outside the supported range [{lo}, {hi if hi is not None else 'inf'}]")
    return cfg.k


def _run_records(cfg: RunConfig) -> list:
    from . import analysis, constants, paperpoly, simulate

    c = cfg.command
    if c == "table":
        try:
            float(cfg.precision)
        except ValueError:
            raise UsageError(f"--prec must be a number, got {cfg.precision!r}")
        rows = constants.table1(_ks(cfg), float(cfg.precision))
        return rows + [constants.check_table1([r for r in rows if r.k in (2, 3, 4, 5, 6, 7, 8, 16)])]
    if c == "poly":
        return [_poly_record(k) for k in _ks(cfg, 2, 12)]
    if c == "roots":
        return [paperpoly.root_count_report(k) for k in _ks(cfg, 2, 8)]
    if c == "discriminants":
        return [paperpoly.discriminant_report(k) for k in _ks(cfg, 2, 6)]
    if c == "verify-fk":
        return [analysis.verify_fk_nonneg(k, cfg.grid, cfg.exclusion) for k in _ks(cfg, 2, 64)]
    if c == "verify-m":
        out = [analysis.verify_lemma_cl(cfg.samples * 10, cfg.seed)]
        for k in _ks(cfg, 2, 12):
            out.append(analysis.verify_corollary_main(k, cfg.samples, cfg.seed))
            out.append(analysis.minimize_m_k(k, seed=cfg.seed).report)
        return out
    if c == "verify-appendix":
        _ks(cfg, 3, 4)
        return [paperpoly.check_table2(k) for k in range(2, 7)] + [paperpoly.verify_appendix_a()]
    if c == "verify-constants":
        if cfg.kmax is None or cfg.kmax < 3:
            raise UsageError("--kmax must be >= 3")
        return [constants.check_table1(), constants.verify_prop_zk(cfg.kmax), constants.verify_lemma_mu(cfg.kmax)]
    if c == "verify-entropy-lemma":
        return [analysis.verify_lemma_main_small(cfg.n, k, cfg.trials, cfg.seed) for k in _ks(cfg, 2, 3)]
    if c == "simulate":
        out = []
        for k in _ks(cfg, 2):
            sim = simulate.simulate(cfg.n, k, cfg.trials, cfg.seed, cfg.method)
            out += [sim, simulate.check_construction(sim)]
            if cfg.n <= 14:
                out.append(simulate.check_exhaustive(sim.spec, cfg.trials, cfg.seed)[1])
        return out
    if c == "bound":
        return [constants.frequency_bound(constants.BoundQuery(k, cfg.eps, cfg.family_size)) for k in _ks(cfg)]
    raise UsageError(f"unknown command {c}")  # pragma: no cover


def _poly_record(k: int) -> dict:
    from .paperpoly import _alpha_split, build_p, format_poly_ab
    from .reports import fmt_number

    p = build_p(k)
    coeffs = [[fmt_number(a), fmt_number(b)] for a, b in map(_alpha_split, p.coeffs)]
    return {"type": "Polynomial", "schema_version": SCHEMA_VERSION, "name": f"p_{k}", "k": k,
            "degree": p.degree, "coefficients_a_b": coeffs, "text": format_poly_ab(p)}


def _record_dict(rec) -> dict:
    return rec if isinstance(rec, dict) else rec.to_dict()


def _status(records) -> int:
    statuses = [r.status for r in records if isinstance(r, PaperCheckReport)]
    if FAIL in statuses:
        return EXIT_FAIL
    if INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _render_json(cfg, records, code, elapsed) -> str:
    header = {"type": "RunHeader", "schema_version": SCHEMA_VERSION, "version": __version__, "config": asdict(cfg)}
    if cfg.timestamp:
        header["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    lines = [header] + [_record_dict(r) for r in records]
    summary = {"type": "RunSummary", "schema_version": SCHEMA_VERSION, "exit_code": code,
               "status": {EXIT_PASS: PASS, EXIT_FAIL: FAIL, EXIT_INCONCLUSIVE: INCONCLUSIVE}[code]}
    if cfg.timestamp:
        summary["elapsed_seconds"] = f"{elapsed:.3f}"
    lines.append(summary)
    return "".join(json.dumps(obj, sort_keys=True, default=str) + "\n" for obj in lines)


def _render_csv(cfg, records) -> str:
    from .constants import ConstantsRow, format_table1

    rows = [r for r in records if isinstance(r, ConstantsRow)]
    if cfg.command == "table" and rows:
        return format_table1(rows, "csv", float(cfg.precision))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("claim_id", "status", "expression", "value", "predicate", "holds", "precision_bits"))
    for r in records:
        if isinstance(r, PaperCheckReport):
            for wit in r.witnesses:
                w.writerow((r.claim_id, r.status, wit.expression, wit.value, wit.predicate,
                            str(wit.holds).lower(), wit.precision_bits if wit.precision_bits is not None else ""))
        else:
            d = _record_dict(r)
            w.writerow((d.get("type"), "", "", json.dumps(d, sort_keys=True, default=str), "", "", ""))
    return buf.getvalue()


def _render_text(cfg, records, code) -> str:
    from .constants import ConstantsRow, format_table1

    out = [f"# kunion {__version__} {cfg.command}"]
    rows = [r for r in records if isinstance(r, ConstantsRow)]
    if rows:
        out.append(format_table1(rows, "text", float(cfg.precision)).rstrip())
    for r in records:
        if isinstance(r, ConstantsRow):
            continue
        if isinstance(r, PaperCheckReport):
            out.append(f"[{r.status.upper()}] {r.claim_id}  ({r.anchor})")
            for wit in r.witnesses:
                mark = "ok " if wit.holds else "BAD"
                out.append(f"   {mark} {wit.expression} = {wit.value}   [{wit.predicate}]")
            continue
        d = _record_dict(r)
        if d.get("type") == "Polynomial":
            out.append(f"{d['name']}(x) = {d['text']}")
        else:
            out.append(json.dumps(d, sort_keys=True, indent=2, default=str))
    out.append(f"exit status {code}")
    return "\n".join(out) + "\n"


def run(cfg: RunConfig) -> int:
    start = time.perf_counter()
    try:
        records = _run_records(cfg)
    except (UsageError, ParameterError) as exc:
        print(f"kunion: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code = _status(records)
    elapsed = time.perf_counter() - start
    if cfg.format == "json":
        text = _render_json(cfg, records, code, elapsed)
    elif cfg.format == "csv":
        text = _render_csv(cfg, records)
    else:
        text = _render_text(cfg, records, code)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
