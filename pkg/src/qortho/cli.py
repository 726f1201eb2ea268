"""Command-line front end.

Subcommands
-----------
verify      run one identity family (or all) over the index grid
spectrum    exact spectral points vs truncated-matrix eigenvalues
table       tabulate polynomial values and normalization constants
limit       classical q -> 1 sweeps with fitted convergence rates
report-all  verify-all + spectrum + limit in one report

Exit codes: 0 all checks passed, 1 any failure, 2 inconclusive results
only, 64 usage error.  Identical configurations produce byte-identical
output; the timestamp header is suppressed with --no-timestamp.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

import mpmath
import numpy as np

from qortho.qseries import DomainError, QParams, Truncation
from qortho.operators import (
    Tridiagonal,
    build_A,
    eig_tridiagonal,
    normalization_c,
    normalization_cprime,
    spectrum_points,
)
from qortho.polynomials import (
    big_q_laguerre,
    big_q_laguerre_recurrence,
    dual_f,
    dual_g,
    q_meixner,
)
from qortho.orthogonality import (
    IDENTITY_FAMILIES,
    VerificationReport,
    run_identity_checks,
)
from qortho.climit import (
    LimitSweep,
    classical_operator_check,
    limit_operator_entries_check,
    limit_polynomial_check,
)
from qortho.reporting import (
    render_csv,
    render_json,
    render_table_csv,
    report_to_record,
    summarize,
)

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

EXTENDED_DPS = 50


@dataclass(frozen=True)
class RunConfig:
    """Echoed verbatim into every report."""

    command: str
    q: float
    a: float
    b: float
    identity: str = "all"
    index_max: int = 8
    dim: int = 200
    tolerance: float = 1e-8
    precision: str = "double"
    output_format: str = "json"
    output_path: Optional[str] = None
    jobs: int = 1
    no_timestamp: bool = False

    def params(self) -> QParams:
        return QParams(q=self.q, a=self.a, b=self.b)

    def truncation(self) -> Truncation:
        return Truncation()

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "q": float(self.q),
            "a": float(self.a),
            "b": float(self.b),
            "l": float(self.params().l),
            "identity": self.identity,
            "index_max": self.index_max,
            "dim": self.dim,
            "tolerance": float(self.tolerance),
            "precision": self.precision,
            "format": self.output_format,
            "jobs": self.jobs,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    parser = _Parser(prog="qortho", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("verify", "run identity verifications"),
        ("spectrum", "spectral points vs truncated eigenvalues"),
        ("table", "tabulate polynomial values"),
        ("limit", "classical-limit sweeps"),
        ("report-all", "verify + spectrum + limit combined"),
    ]:
        sp = sub.add_parser(name, help=helptext, parents=[], add_help=True)
        sp.add_argument("--q", type=float, default=0.5, help="base, 0 < q < 1")
        sp.add_argument("--a", type=float, default=0.5, help="parameter a, 0 < a < 1/q")
        sp.add_argument("--b", type=float, default=-0.7, help="parameter b, b < 0")
        sp.add_argument("--l", type=float, default=None, help="lowest weight; overrides --a via a = q^(2l-1)")
        sp.add_argument(
            "--identity",
            default="all",
            choices=("all",) + IDENTITY_FAMILIES,
            help="identity family for verify",
        )
        sp.add_argument("--index-max", type=int, default=8, dest="index_max")
        sp.add_argument("--dim", type=int, default=200)
        sp.add_argument("--tol", type=float, default=1e-8, dest="tolerance")
        sp.add_argument("--precision", choices=("double", "extended"), default="double")
        sp.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
        sp.add_argument("--out", default=None, dest="output_path")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--no-timestamp", action="store_true", dest="no_timestamp")
    return parser


def _config_from_args(args) -> RunConfig:
    q, a, b = args.q, args.a, args.b
    if args.l is not None:
        if not args.l > 0:
            raise DomainError("l must be positive")
        a = q ** (2 * args.l - 1)
    cfg = RunConfig(
        command=args.command,
        q=q,
        a=a,
        b=b,
        identity=args.identity,
        index_max=args.index_max,
        dim=args.dim,
        tolerance=args.tolerance,
        precision=args.precision,
        output_format=args.output_format,
        output_path=args.output_path,
        jobs=max(1, args.jobs),
        no_timestamp=args.no_timestamp,
    )
    cfg.params()  # validates the domain before any computation
    if cfg.index_max < 0:
        raise DomainError("index-max must be nonnegative")
    if cfg.dim < 1:
        raise DomainError("dim must be a positive integer")
    if not cfg.tolerance > 0:
        raise DomainError("tol must be positive")
    return cfg


# ---------------------------------------------------------------------------
# verify


def _verify_family_records(task) -> list:
    family, q, a, b, index_max, tolerance, precision = task
    if precision == "extended":
        with mpmath.workdps(EXTENDED_DPS):
            p = QParams(q=mpmath.mpf(repr(q)), a=mpmath.mpf(repr(a)), b=mpmath.mpf(repr(b)))
            t = Truncation(rel_tol=1e-20)
            reports = run_identity_checks(family, p, t, index_max, tolerance)
    else:
        p = QParams(q=q, a=a, b=b)
        reports = run_identity_checks(family, p, Truncation(), index_max, tolerance)
    return [report_to_record(r) for r in reports]


def _run_verify(cfg: RunConfig) -> list:
    families = list(IDENTITY_FAMILIES) if cfg.identity == "all" else [cfg.identity]
    tasks = [
        (fam, cfg.q, cfg.a, cfg.b, cfg.index_max, cfg.tolerance, cfg.precision)
        for fam in families
    ]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_verify_family_records, tasks))
    else:
        chunks = [_verify_family_records(task) for task in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: (r["identity_id"], r["i"], r["j"]))
    return records


# ---------------------------------------------------------------------------
# spectrum


def _thomas_solve(diag: np.ndarray, off: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve the symmetric tridiagonal system (no pivoting; pivots are
    floored to keep near-singular inverse-iteration solves finite)."""
    n = diag.size
    c = np.zeros(n - 1)
    d = np.zeros(n)
    piv = diag[0] if abs(diag[0]) > 1e-280 else 1e-280
    c[0] = off[0] / piv
    d[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diag[i] - off[i - 1] * c[i - 1]
        if abs(piv) < 1e-280:
            piv = 1e-280
        if i < n - 1:
            c[i] = off[i] / piv
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / piv
    x = np.zeros(n)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def _tail_mass(tri: Tridiagonal, lam: float) -> float:
    """Eigenvector mass in the last 10 rows, via two inverse-iteration
    passes; large mass flags an eigenvalue corrupted by truncation."""
    n = tri.dim
    if n <= 10:
        return 0.0
    x = np.ones(n) / math.sqrt(n)
    shifted = tri.diag - lam
    for _ in range(2):
        x = _thomas_solve(shifted, tri.offdiag, x)
        nrm = float(np.linalg.norm(x))
        if nrm == 0 or not math.isfinite(nrm):
            return 1.0
        x /= nrm
    return float(np.sum(x[-10:] ** 2))


def _spectrum_reports(cfg: RunConfig) -> list:
    p = cfg.params()
    t = cfg.truncation()
    n_extreme = 10
    exact = spectrum_points(p, max(30, n_extreme)).merged_by_magnitude()[:n_extreme]
    reports = []
    errors = {}
    for d in (cfg.dim, 2 * cfg.dim):
        tri = build_A(p, d)
        eig = eig_tridiagonal(tri)
        for rank, lam in enumerate(exact):
            lam = float(lam)
            idx = int(np.argmin(np.abs(eig - lam)))
            matched = float(eig[idx])
            mass = _tail_mass(tri, matched) if d > 10 else 0.0
            err = abs(matched - lam)
            errors[(rank, d)] = err
            certified = mass < 1e-8
            residual_ok = err <= cfg.tolerance * (1 + abs(lam))
            status = ("pass" if residual_ok else "fail") if certified else "inconclusive"
            reports.append(
                VerificationReport(
                    identity_id="spectrum-match",
                    params=p,
                    indices=(rank, d),
                    lhs=lam,
                    rhs=matched,
                    residual=err,
                    terms_used=d,
                    tail_estimate=0.0 if certified else math.inf,
                    passed=status == "pass",
                    tolerance=cfg.tolerance,
                    status=status,
                    note=f"eigenvector mass in last 10 rows: {mass:.3e}",
                )
            )
    for rank in range(n_extreme):
        e1, e2 = errors[(rank, cfg.dim)], errors[(rank, 2 * cfg.dim)]
        floor = 1e-14 * (1 + abs(float(exact[rank])))
        ok = e2 <= e1 * 1.000001 + floor
        reports.append(
            VerificationReport(
                identity_id="spectrum-converge",
                params=p,
                indices=(rank, cfg.dim),
                lhs=e1,
                rhs=e2,
                residual=max(0.0, e2 - e1),
                terms_used=3 * cfg.dim,
                tail_estimate=0.0,
                passed=ok,
                tolerance=cfg.tolerance,
                status="pass" if ok else "fail",
                note="matching error must not grow when dim doubles",
            )
        )
    reports.sort(key=lambda r: (r.identity_id, r.indices))
    return [report_to_record(r) for r in reports]


# ---------------------------------------------------------------------------
# table


def _table_rows(cfg: RunConfig) -> list:
    p = cfg.params()
    t = cfg.truncation()
    rows = []
    xs = [p.a * p.q, p.a * p.q**2, p.a * p.q**3, p.b * p.q, p.b * p.q**2, p.b * p.q**3]
    for x in xs:
        seqs = big_q_laguerre_recurrence(cfg.index_max, x, p)
        for n in range(cfg.index_max + 1):
            rows.append(
                {
                    "family": "big-q-laguerre",
                    "n": n,
                    "m_or_x": float(x),
                    "value": float(big_q_laguerre(n, x, p, t)),
                    "method": "series",
                }
            )
            rows.append(
                {
                    "family": "big-q-laguerre",
                    "n": n,
                    "m_or_x": float(x),
                    "value": float(seqs[n]),
                    "method": "recurrence",
                }
            )
    for n in range(cfg.index_max + 1):
        for m in range(cfg.index_max + 1):
            rows.append(
                {
                    "family": "q-meixner",
                    "n": n,
                    "m_or_x": m,
                    "value": float(q_meixner(n, m, p.a, -p.b / p.a, p.q, t)),
                    "method": "series",
                }
            )
            rows.append(
                {
                    "family": "dual-f",
                    "n": n,
                    "m_or_x": m,
                    "value": dual_f(n, m, p, t),
                    "method": "spectral",
                }
            )
            rows.append(
                {
                    "family": "dual-g",
                    "n": n,
                    "m_or_x": m,
                    "value": dual_g(n, m, p, t),
                    "method": "spectral",
                }
            )
    for n in range(cfg.index_max + 1):
        rows.append(
            {
                "family": "c",
                "n": n,
                "m_or_x": n,
                "value": float(normalization_c(n, p, t)),
                "method": "closed-form",
            }
        )
        rows.append(
            {
                "family": "c-prime",
                "n": n,
                "m_or_x": n,
                "value": float(normalization_cprime(n, p, t)),
                "method": "closed-form",
            }
        )
    return rows


# ---------------------------------------------------------------------------
# limit


def _limit_reports(cfg: RunConfig) -> list:
    t = cfg.truncation()
    sweep = LimitSweep(alpha=1.0, beta=0.5)
    reports = []
    for n in range(min(cfg.index_max, 6) + 1):
        reports.extend(limit_polynomial_check(n, 0.4, sweep, t))
    reports.extend(limit_operator_entries_check(min(cfg.index_max, 5), sweep))
    reports.append(classical_operator_check(0.25, 0.2, 1.0))
    reports.sort(key=lambda r: (r.identity_id, r.indices))
    return [report_to_record(r) for r in reports]


# ---------------------------------------------------------------------------
# output assembly


def _emit(cfg: RunConfig, records: list, table_rows: Optional[list] = None) -> int:
    if cfg.output_format == "csv":
        text = render_table_csv(table_rows) if table_rows is not None else render_csv(records)
    else:
        payload = {"schema_version": "1"}
        if not cfg.no_timestamp:
            payload["generated_at"] = datetime.now(timezone.utc).isoformat()
        payload["config"] = cfg.as_dict()
        if table_rows is not None:
            payload["table"] = table_rows
        payload["records"] = records
        payload["summary"] = summarize(records)
        text = render_json(payload)

    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"qortho: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    statuses = [rec["status"] for rec in records]
    if any(s == "fail" for s in statuses):
        return EXIT_FAIL
    if any(s == "inconclusive" for s in statuses):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except DomainError as exc:
        print(f"qortho: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if cfg.command == "verify":
            records = _run_verify(cfg)
            return _emit(cfg, records)
        if cfg.command == "spectrum":
            return _emit(cfg, _spectrum_reports(cfg))
        if cfg.command == "table":
            return _emit(cfg, [], table_rows=_table_rows(cfg))
        if cfg.command == "limit":
            return _emit(cfg, _limit_reports(cfg))
        if cfg.command == "report-all":
            records = _run_verify(cfg)
            records.extend(_spectrum_reports(cfg))
            records.extend(_limit_reports(cfg))
            records.sort(key=lambda r: (r["identity_id"], r["i"], r["j"]))
            return _emit(cfg, records)
    except DomainError as exc:
        print(f"qortho: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError(f"unhandled command {cfg.command}")


if __name__ == "__main__":
    sys.exit(main())
