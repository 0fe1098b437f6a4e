"""Command-line front end: zero location, bound certification, valence
audits, space construction, and plot-data emission.

Exit codes: 0 pass, 2 check failure, 3 numerical indeterminacy, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import pi

import numpy as np

from . import bounds as bounds_mod
from . import spaces as spaces_mod
from .eisenstein import LatticeSumConfig
from .errors import (
    CountMismatchError,
    EchelonError,
    IndeterminateSignError,
    TailBoundError,
    UnstableWindingError,
)
from .fricke import THETA_MAX, f_restricted, fricke_qseries, m_count
from .zeros import expected_elliptic_orders, locate_zeros, valence_audit, _measured_orders

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 2
EXIT_INDETERMINATE = 3
EXIT_USAGE = 64

_NUMERIC_ERRORS = (TailBoundError, IndeterminateSignError, UnstableWindingError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    level: int
    weights: list[int]
    tol: float = 1e-10
    max_norm: int = 40_000
    truncation: int = 50
    precision: int = 15
    fmt: str = "json"
    out: str | None = None

    @property
    def lattice(self) -> LatticeSumConfig:
        return LatticeSumConfig(self.max_norm, self.precision)


def _parse_weights(ns) -> list[int]:
    if ns.weights is not None:
        try:
            lo, hi = ns.weights.split("..")
            lo, hi = int(lo), int(hi)
        except ValueError as exc:
            raise UsageError(f"bad weight range {ns.weights!r}; expected a..b") from exc
        ws = list(range(lo, hi + 1, 2))
        if not ws:
            raise UsageError(f"empty weight range {ns.weights!r}")
    elif ns.weight is not None:
        ws = [ns.weight]
    else:
        raise UsageError("one of --weight / --weights is required")
    for w in ws:
        if w % 2 != 0 or w < 4:
            raise UsageError(f"weights must be even and >= 4, got {w}")
    return ws


def _build_config(argv) -> RunConfig:
    parser = _Parser(prog="fricke-zeros", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("zeros", "bounds", "valence", "spaces", "plot"):
        sp = sub.add_parser(name)
        sp.add_argument("--level", type=int, required=True, choices=(1, 2, 3))
        sp.add_argument("--weight", type=int)
        sp.add_argument("--weights", type=str, help="inclusive range a..b, step 2")
        sp.add_argument("--tol", type=float, default=1e-10)
        sp.add_argument("--max-norm", type=int, default=40_000)
        sp.add_argument("--truncation", type=int, default=50)
        sp.add_argument("--precision", type=int, default=15)
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)
        sp.add_argument("--out", type=str, default=None)
    ns = parser.parse_args(argv)
    if not (1e-12 <= ns.tol <= 1e-4):
        raise UsageError(f"tolerance must lie in [1e-12, 1e-4], got {ns.tol}")
    fmt = ns.fmt or ("csv" if ns.command == "plot" else "json")
    if ns.command == "plot" and fmt != "csv":
        raise UsageError("plot emits CSV only")
    if ns.command != "plot" and fmt != "json":
        raise UsageError(f"{ns.command} emits JSON only")
    return RunConfig(
        command=ns.command, level=ns.level, weights=_parse_weights(ns),
        tol=ns.tol, max_norm=ns.max_norm, truncation=ns.truncation,
        precision=ns.precision, fmt=fmt, out=ns.out,
    )


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _canonical(obj):
    """Round floats to 17 significant digits so JSON output is byte-stable."""
    if isinstance(obj, float):
        return float(f"{obj:.17g}")
    if isinstance(obj, dict):
        return {k: _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


def _emit(cfg: RunConfig, payload: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _report(cfg: RunConfig, results, certificates, verdict) -> str:
    doc = {
        "config": {
            "command": cfg.command, "level": cfg.level, "weights": cfg.weights,
            "tol": cfg.tol, "max_norm": cfg.max_norm,
            "truncation": cfg.truncation, "precision": cfg.precision,
        },
        "results": results,
        "certificates": certificates,
        "verdict": verdict,
    }
    return json.dumps(_canonical(doc), sort_keys=True, indent=2) + "\n"


def cmd_zeros(cfg: RunConfig) -> int:
    results, ok = [], True
    for k in cfg.weights:
        records = locate_zeros(k, cfg.level, tol=cfg.tol, cfg=cfg.lattice)
        orders = _measured_orders(k, cfg.level)
        expected = expected_elliptic_orders(k, cfg.level)
        match = len(records) == m_count(k, cfg.level) and orders == expected
        ok &= match
        results.append({
            "weight": k,
            "zeros": [r.to_dict() for r in records],
            "orders": {"v_i": orders[0], "v_rho": orders[1]},
            "expected_orders": {"v_i": expected[0], "v_rho": expected[1]},
            "count_predicted": m_count(k, cfg.level),
            "pass": match,
        })
    _emit(cfg, _report(cfg, results, [], "pass" if ok else "fail"))
    return EXIT_PASS if ok else EXIT_CHECK_FAILURE


def cmd_bounds(cfg: RunConfig) -> int:
    certs, info = [], []
    if cfg.level == 1:
        certs.append(bounds_mod.r1_lt_2_for_k_ge_8(max(cfg.weights)))
        for k in cfg.weights:
            info.append({"weight": k, "r1_bound": bounds_mod.r1_bound(k)})
    else:
        raw = {2: bounds_mod.r2_star_bound_raw, 3: bounds_mod.r3_star_bound_raw}[cfg.level]
        for k in cfg.weights:
            info.append({"weight": k, "raw_bound": raw(k),
                         "note": "raw bound exceeds 2 by design" if raw(k) > 2 else ""})
            if k >= 8:
                certs.extend(bounds_mod.restricted_bound_certificates(cfg.level, k, k))
                certs.extend(bounds_mod.verify_term_bounds(k, cfg.level))
    failed = [c.name for c in certs if c.verdict != "pass"]
    _emit(cfg, _report(cfg, info, [c.to_dict() for c in certs],
                       "pass" if not failed else f"fail: {sorted(failed)}"))
    return EXIT_PASS if not failed else EXIT_CHECK_FAILURE


def cmd_valence(cfg: RunConfig) -> int:
    reports = [valence_audit(k, cfg.level, cfg=cfg.lattice) for k in cfg.weights]
    ok = all(r.passed for r in reports)
    _emit(cfg, _report(cfg, [r.to_dict() for r in reports], [],
                       "pass" if ok else "fail"))
    return EXIT_PASS if ok else EXIT_CHECK_FAILURE


def cmd_spaces(cfg: RunConfig) -> int:
    if cfg.level == 1:
        raise UsageError("spaces supports levels 2 and 3 only")
    results, certs = [], []
    for k in cfg.weights:
        desc = spaces_mod.build_basis(k, cfg.level, cfg.truncation)
        results.append(desc.to_dict())
    if cfg.level == 3:
        certs.extend(spaces_mod.verify_appendix_table())
        # product/quotient identities, as exact-equality certificates
        n = cfg.truncation
        # note E4*E6 - E10 is NOT zero at level 3; it is the d3_10 generator
        idents = [
            ("d3_12_1=d3_8*E4", spaces_mod.build_delta("d3_8", n) * fricke_qseries(4, 3, n),
             spaces_mod.build_delta("d3_12_1", n)),
            ("d3_14=d3_10*E4", spaces_mod.build_delta("d3_10", n) * fricke_qseries(4, 3, n),
             spaces_mod.build_delta("d3_14", n)),
            ("d3_12_0*E4=d3_8^2", spaces_mod.build_delta("d3_12_0", n) * fricke_qseries(4, 3, n),
             spaces_mod.build_delta("d3_8", n) ** 2),
        ]
        for name, lhs, rhs in idents:
            certs.append(bounds_mod.BoundCertificate(
                name=f"identity:{name}", k=lhs.weight,
                lhs_max=0.0 if lhs.agrees_with(rhs) else 1.0, rhs=0.5,
                grid=f"exact rational coefficients to truncation {n}",
            ))
    else:
        n = cfg.truncation
        lhs = fricke_qseries(4, 2, n) * fricke_qseries(6, 2, n)
        certs.append(bounds_mod.BoundCertificate(
            name="identity:E10=E4*E6", k=10,
            lhs_max=0.0 if lhs.agrees_with(fricke_qseries(10, 2, n)) else 1.0, rhs=0.5,
            grid=f"exact rational coefficients to truncation {n}",
        ))
    failed = [c.name for c in certs if c.verdict != "pass"]
    _emit(cfg, _report(cfg, results, [c.to_dict() for c in certs],
                       "pass" if not failed else f"fail: {sorted(failed)}"))
    return EXIT_PASS if not failed else EXIT_CHECK_FAILURE


def cmd_plot(cfg: RunConfig, grid: int = 2000) -> int:
    k = cfg.weights[0]
    thetas = np.linspace(pi / 2, THETA_MAX[cfg.level], grid)
    lines = ["theta,f_value"]
    for t in thetas:
        v = f_restricted(k, cfg.level, float(t), cfg.lattice)
        lines.append(f"{t:.17g},{v:.17g}")
    lines.append("# located zeros")
    lines.append("theta,multiplicity")
    for r in locate_zeros(k, cfg.level, tol=cfg.tol, cfg=cfg.lattice):
        lines.append(f"{r.theta:.17g},{r.multiplicity}")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_PASS


_COMMANDS = {
    "zeros": cmd_zeros,
    "bounds": cmd_bounds,
    "valence": cmd_valence,
    "spaces": cmd_spaces,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    try:
        cfg = _build_config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CountMismatchError, EchelonError) as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    except _NUMERIC_ERRORS as exc:
        print(f"numerical indeterminacy: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
