"""Serialization of results into report documents, CSV rows, and TeX rows.

Integers are written as decimal strings (they outgrow 64 bits from n = 5 on)
and rationals as ``"p/q"``.  Field order is fixed by construction so that
identical inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from mldlab.alpha import AlphaBounds, TangentConeData, tangent_cone, tangent_cone_certificate
from mldlab.exact import format_rational
from mldlab.family import (
    FamilyCertificate,
    FamilyMember,
    OtherPointsReport,
    closed_form_mld,
    sylvester_form_mld,
)
from mldlab.mld import LatticePoint, MldResult
from mldlab.wps import NewtonSlackCertificate, WeightedPolynomial, monomial_string

SCHEMA_VERSION = "1"

# Weight vectors whose longest entry exceeds this many digits are elided in tables.
ELIDE_DIGITS = 40


def _int(x: int) -> str:
    return str(x)


def _q(x: Fraction) -> str:
    return format_rational(x)


def polynomial_doc(p: WeightedPolynomial) -> dict:
    return {
        "weights": [_int(w) for w in p.weights],
        "monomials": [[_int(e) for e in m] for m in p.monomials],
        "terms": [monomial_string(m) for m in p.monomials],
    }


def lattice_point_doc(beta: Optional[LatticePoint]) -> Optional[dict]:
    if beta is None:
        return None
    doc: dict[str, Any] = {}
    if beta.group_index is not None:
        doc["group_index"] = _int(beta.group_index)
    if beta.basis_index is not None:
        doc["basis_index"] = _int(beta.basis_index)
    doc["coordinates"] = [_q(c) for c in beta.coordinates]
    return doc


def mld_doc(result: MldResult) -> dict:
    return {
        "value": "-inf" if result.value is None else _q(result.value),
        "classification": result.classification.value,
        "witness": lattice_point_doc(result.witness),
        "exhaustive": result.exhaustive,
    }


def alpha_doc(bounds: AlphaBounds) -> dict:
    return {
        "nu_smooth": _q(bounds.nu_smooth),
        "nu_l": _q(bounds.nu_l),
        "nu_mult": _q(bounds.nu_mult),
        "nu_point": _q(bounds.nu_point),
        "lower": _q(bounds.lower),
        "upper": _q(bounds.upper),
        "kind": "bounds only",
    }


def slack_doc(cert: NewtonSlackCertificate) -> dict:
    return {
        "slack": _q(cert.slack),
        "combination": [[_int(k), _q(lam)] for k, lam in cert.combination],
    }


def tangent_cone_doc(cone: TangentConeData, cert: NewtonSlackCertificate) -> dict:
    return {
        "b_weights": [_q(b) for b in cone.b_weights],
        "degree": _int(cone.cone_degree),
        "equation": polynomial_doc(cone.cone_equation),
        "newton_slack": slack_doc(cert),
    }


def member_doc(F: FamilyMember) -> dict:
    return {
        "n": _int(F.n),
        "parity": F.parity,
        "s_n": _int(F.s_n),
        "weights": [_int(a) for a in F.a],
        "degree": _int(F.d),
        "b": _int(F.b),
        "c": _int(F.c),
        "r": _int(F.r),
        "j0": _int(F.j0),
        "equation": polynomial_doc(F.equation),
    }


def family_doc(F: FamilyMember, bounds: AlphaBounds) -> dict:
    return {
        "member": member_doc(F),
        "mld": _q(closed_form_mld(F)),
        "mld_sylvester_form": _q(sylvester_form_mld(F)),
        "alpha": alpha_doc(bounds),
        "assumptions": {"newton_nondegenerate": "assumed (general coefficients)"},
    }


def other_points_doc(rep: OtherPointsReport) -> dict:
    return {
        "coordinate_point": {
            "singularity": str(rep.coordinate_point),
            "mld_lower_bound": _q(rep.coordinate_point_bound),
            "method": rep.coordinate_point_method,
            "ok": rep.coordinate_point_ok,
        },
        "strata": [
            {
                "pair": [_int(s.stratum.i1), _int(s.stratum.i2)],
                "g": _int(s.stratum.g),
                "m": None if s.stratum.m is None else _int(s.stratum.m),
                "j_bound": _int(s.j_bound),
                "method": s.method,
                "failures": _int(s.failures),
                "ok": s.ok,
            }
            for s in rep.strata
        ],
        "away_bound": _q(rep.away_bound),
        "away_bound_exceeds_mld": rep.comparison_ok,
        "ok": rep.ok,
    }


def certificate_doc(cert: FamilyCertificate) -> dict:
    F = cert.member
    return {
        "member": member_doc(F),
        "checks": cert.checks(),
        "failures": {
            "degree_identities": list(cert.degree.failures),
            "gcd_lemma": list(cert.gcd.failures),
            "quasismooth_pattern": list(cert.quasismooth_pattern.failures),
            "exceptional": list(cert.exceptional.failures),
        },
        "closed_form_mld": _q(cert.closed_form_mld),
        "mld_sylvester_form": _q(cert.sylvester_form_mld),
        "witness": mld_doc(cert.witness),
        "brute_force_mld": None if cert.brute_force_mld is None else mld_doc(cert.brute_force_mld),
        "other_points": other_points_doc(cert.other_points),
        "tangent_cone": tangent_cone_doc(tangent_cone(F), tangent_cone_certificate(F)),
        "alpha": alpha_doc(cert.alpha),
        "assumptions": {"newton_nondegenerate": "assumed (general coefficients)"},
        "notes": list(cert.notes),
        "ok": cert.ok,
    }


def report_document(command: str, inputs: dict, results: Any, timing: dict[str, float]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "timing": {k: round(v, 3) for k, v in timing.items()},
    }


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# -- tabular forms --------------------------------------------------------------


def weights_cell(a: Sequence[int]) -> str:
    if max(len(str(x)) for x in a) > ELIDE_DIGITS:
        return f"({len(a)} weights, up to {max(len(str(x)) for x in a)} digits)"
    return " ".join(map(str, a))


def family_row(F: FamilyMember, bounds: AlphaBounds, ok: Optional[bool] = None) -> dict[str, str]:
    row = {
        "n": _int(F.n),
        "weights": weights_cell(F.a),
        "d": _int(F.d),
        "mld": _q(closed_form_mld(F)),
        "mld_sylvester_form": _q(sylvester_form_mld(F)),
        "alpha_lower": _q(bounds.lower),
        "alpha_upper": _q(bounds.upper),
    }
    if ok is not None:
        row["certificate_ok"] = "true" if ok else "false"
    return row


def mld_row(result: MldResult) -> dict[str, str]:
    w = result.witness
    return {
        "value": "-inf" if result.value is None else _q(result.value),
        "classification": result.classification.value,
        "witness_group_index": "" if w is None or w.group_index is None else _int(w.group_index),
        "witness_basis_index": "" if w is None or w.basis_index is None else _int(w.basis_index),
        "witness_coordinates": "" if w is None else " ".join(_q(c) for c in w.coordinates),
    }


def to_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def tex_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def tex_family_row(F: FamilyMember, bounds: AlphaBounds) -> str:
    cells = [
        str(F.n),
        str(F.d),
        tex_rational(closed_form_mld(F)),
        tex_rational(bounds.lower),
        tex_rational(bounds.upper),
    ]
    return " & ".join(f"${c}$" for c in cells) + " \\\\\n"


def tex_cells_row(cells: Sequence[str]) -> str:
    return " & ".join(cells) + " \\\\\n"
