"""CSV and JSON writers for reports, histories and case matrices.

CSV files are UTF-8 with ``\\n`` line endings, a header row and no quoting.
Numbers use the shortest repr that round-trips to the same float64, with a
trailing ``.0`` dropped (``0``, ``1``, ``0.33205733``).
"""

import json
import math

__all__ = ["emit_checks", "emit_convergence", "emit_matrix", "emit_profile", "fmt", "report_json"]


def fmt(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = repr(x)
    if s.endswith(".0"):
        s = s[:-2]
    return s


def _rows(sink, header, rows):
    sink.write(",".join(header) + "\n")
    for row in rows:
        sink.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")


def report_json(report):
    return json.dumps(report.to_dict(), indent=1) + "\n"


def emit_profile(report, format, sink):
    """Write the report's profile as ``eta,f,fp,fpp`` CSV or the whole report as JSON."""
    if format == "json":
        sink.write(report_json(report))
        return
    if format != "csv":
        raise ValueError(f"unknown format {format!r}")
    p = report.profile
    _rows(sink, ("eta", "f", "fp", "fpp"), zip(p.eta, p.f, p.fp, p.fpp))


def emit_convergence(history, sink):
    rows = ((str(rec.iteration), rec.best_fitness, rec.best[0], rec.best[1]) for rec in history)
    _rows(sink, ("iteration", "best_fitness", "alpha", "eta_inf"), rows)


def emit_matrix(cells, sink):
    rows = []
    for c in cells:
        residual = c.report.residual if c.report else float("nan")
        error = (c.error or "").replace(",", ";").replace("\n", " ")
        rows.append((c.params.beta0, c.params.beta, c.algorithm, c.alpha, c.eta_inf, residual, error))
    _rows(sink, ("beta0", "beta", "algorithm", "alpha", "eta_inf", "residual", "error"), rows)


def emit_checks(checks, sink):
    rows = (
        (c.regime, c.quantity, c.got, c.want, c.tol, "pass" if c.passed else "fail")
        for c in checks
    )
    _rows(sink, ("regime", "quantity", "got", "want", "tol", "status"), rows)
