"""Serialization of analysis reports: versioned JSON and a readable trace."""

from __future__ import annotations

import json

from .poly import format_bipoly, format_poly

SCHEMA = "wildaut-report/1"
TRACE_DEGREE_CAP = 256


def _matrix(a) -> list:
    return [[int(x) for x in row] for row in a]


def report_dict(rep, *, timing: bool = False) -> dict:
    F = rep.field
    rs = rep.roots
    prof = rep.profile
    d = {
        "version": SCHEMA,
        "p": F.p,
        "field": {"e": F.e, "modulus": list(F.modulus)},
        "input": format_poly(rep.input),
        "reduced": format_poly(rep.red_f),
        "conductor": rep.conductor,
        "genus": rep.genus,
        "ad": format_poly(rep.ad, "Y"),
        "splitting_extension": rs.field.e // F.e,
        "working_field": {"e": rs.field.e, "modulus": list(rs.field.modulus)},
        "root_basis": rs.coordinate_vectors(),
        "group": {
            "order": prof.order,
            "exponent": prof.exponent,
            "center_order": prof.center_order,
            "derived_order": prof.derived_order,
            "order_stats": {str(k): v for k, v in sorted(prof.order_stats.items())},
            "label": str(rep.label),
        },
        "epsilon_matrix": _matrix(prof.epsilon_matrix),
        "s_vector": [int(x) for x in prof.s_vector],
        "checks": list(rep.checks),
    }
    if timing:
        d["timing"] = {k: round(v, 6) for k, v in rep.timing.items()}
    return d


def to_json(rep, *, timing: bool = False) -> str:
    return json.dumps(report_dict(rep, timing=timing), sort_keys=True, separators=(",", ":"))


def to_text(rep) -> str:
    from .trace import TraceError, build_trace

    F = rep.field
    prof = rep.profile
    dec = rep.decomposition
    lines = [
        f"field        F_{F.p}^{F.e}  modulus {list(F.modulus)}",
        f"f            {format_poly(rep.input)}",
        f"red(f)       {format_poly(rep.red_f)}",
        f"conductor    {rep.conductor}   genus {rep.genus}",
        f"Delta f      {format_bipoly(dec.delta)}",
        f"F(X,Y)       {format_bipoly(dec.big_f)}",
        f"P_f          {format_bipoly(dec.p_f)}",
        f"Ad           {format_poly(rep.ad, 'Y')}",
    ]
    tr = None
    if rep.ad.degree() <= TRACE_DEGREE_CAP:
        try:
            tr = build_trace(rep)
        except TraceError as exc:
            lines.append(f"trace        unavailable: {exc}")
    if tr is not None:
        lines += [
            f"P_f mod Ad   {format_bipoly(tr.p_f_reduced)}",
            f"sum P(X+iY,Y) mod Ad   {format_poly(tr.power_poly, 'Y')}",
            f"gcd with Ad  {format_poly(tr.power_gcd, 'Y')}",
            f"eps(Y,Z)     {format_bipoly(tr.commutator, 'Y', 'Z')}",
        ]
    rs = rep.roots
    lines.append(f"root space   dim {rs.r} over F_{F.p}, in F_{F.p}^{rs.field.e}")
    E = _matrix(prof.epsilon_matrix)
    if E:
        lines.append("eps matrix")
        lines += ["  " + " ".join(str(x) for x in row) for row in E]
    lines += [
        f"s on basis   {[int(x) for x in prof.s_vector]}",
        f"order        {prof.order}   exponent {prof.exponent}   center {prof.center_order}",
        "order stats  " + ", ".join(f"{k}:{v}" for k, v in sorted(prof.order_stats.items())),
        f"group        {rep.label}",
        f"checks       {', '.join(rep.checks)}",
    ]
    return "\n".join(lines) + "\n"
