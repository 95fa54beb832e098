"""
JSON codecs for braidbook values.
Integers that can grow without bound are written as decimal strings and
rationals as "p/q"; dumps() sorts keys so equal inputs give equal bytes.
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from core.braid_core import BraidWord
from core.errors import UsageError
from core.laurent import LaurentPoly
from core.linalg_exact import ExactMatrix, Ring
from core.orderings import FdtcEstimate, SigmaClass
from core.topology import (
    ClosedFormCheck,
    FamilySide,
    OpenBookReport,
    Page,
    Prop41Row,
    StabilizationLedger,
    Theorem12Report,
)


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def rational_to_text(value: Optional[Fraction]) -> Optional[str]:
    if value is None:
        return None
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def rational_from_text(text: Optional[str]) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational: {text!r}") from e


# Braid words

def word_to_json(w: BraidWord) -> Dict[str, Any]:
    return {"strands": w.strands, "letters": list(w.letters)}


def word_from_json(data: Dict[str, Any]) -> BraidWord:
    try:
        return BraidWord(int(data["strands"]), tuple(int(e) for e in data["letters"]))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed braid word JSON: {e}") from e


# Laurent polynomials

def laurent_to_json(p: LaurentPoly) -> List[List[Any]]:
    return [[exponent, str(coefficient)] for exponent, coefficient in p.items_descending()]


def laurent_from_json(data: List[List[Any]]) -> LaurentPoly:
    try:
        return LaurentPoly.from_pairs((int(e), int(c)) for e, c in data)
    except (TypeError, ValueError) as e:
        raise UsageError(f"malformed Laurent polynomial JSON: {e}") from e


# Matrices

def matrix_to_json(m: ExactMatrix) -> Dict[str, Any]:
    encode = str if m.ring is Ring.INT else laurent_to_json
    return {
        "ring": m.ring.value,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[encode(v) for v in row] for row in m.entries],
    }


def matrix_from_json(data: Dict[str, Any]) -> ExactMatrix:
    try:
        ring = Ring(data["ring"])
        decode = int if ring is Ring.INT else laurent_from_json
        entries = tuple(tuple(decode(v) for v in row) for row in data["entries"])
        return ExactMatrix(ring, int(data["rows"]), int(data["cols"]), entries)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed matrix JSON: {e}") from e


# Orderings

def sigma_class_to_json(cls: SigmaClass) -> Dict[str, Any]:
    return {"kind": cls.kind.value, "index": cls.index}


def estimate_to_json(est: Optional[FdtcEstimate]) -> Optional[Dict[str, Any]]:
    if est is None:
        return None
    return {
        "lower": rational_to_text(est.lower),
        "upper": rational_to_text(est.upper),
        "pinned": rational_to_text(est.pinned),
        "power_used": est.power_used,
    }


# Topology

def page_to_json(page: Page) -> Dict[str, Any]:
    return {
        "strands": page.strands,
        "genus": page.genus,
        "boundary_components": page.boundary_components,
        "euler_characteristic": page.euler_characteristic,
    }


def report_to_json(report: OpenBookReport) -> Dict[str, Any]:
    return {
        "braid": word_to_json(report.braid),
        "page": page_to_json(report.page),
        "binding_connected": report.binding_connected,
        "fdtc_braid": estimate_to_json(report.fdtc_braid),
        "fdtc_upstairs": estimate_to_json(report.fdtc_upstairs),
        "stein_witness": report.stein_witness,
        "non_destabilizable": report.non_destabilizable,
        "h1_order": report.h1_order,
    }


def prop41_row_to_json(row: Prop41Row) -> Dict[str, Any]:
    return {
        "k": row.k,
        "predicted": str(row.predicted),
        "determinant": str(row.determinant),
        "determinant_swapped": str(row.determinant_swapped),
        "closed_form_match": row.closed_form_match,
        "passed": row.passed,
    }


def closed_form_to_json(check: ClosedFormCheck) -> Dict[str, Any]:
    return {"name": check.name, "n": check.n, "l": check.l, "matches": check.matches}


def side_to_json(side: FamilySide) -> Dict[str, Any]:
    return {
        "n": side.n,
        "m": side.m,
        "page": page_to_json(side.page),
        "positive": side.positive,
        "determinant": str(side.determinant),
        "alexander": laurent_to_json(side.alexander) if side.alexander is not None else None,
        "self_linking": side.self_linking,
        "fdtc_upstairs": estimate_to_json(side.fdtc_upstairs),
    }


def theorem_to_json(report: Theorem12Report) -> Dict[str, Any]:
    return {
        "k": report.k,
        "larger": side_to_json(report.larger),
        "smaller": side_to_json(report.smaller),
        "genus_ok": report.genus_ok,
        "euler_gap": report.euler_gap,
        "determinants_equal": report.determinants_equal,
        "alexander_equal": report.alexander_equal,
        "self_linking_equal": report.self_linking_equal,
        "fdtc_predicted": rational_to_text(report.fdtc_predicted),
        "fdtc_matches": report.fdtc_matches,
        "passed": report.passed,
    }


def ledger_to_json(ledger: StabilizationLedger) -> Dict[str, Any]:
    return {
        "word": word_to_json(ledger.word),
        "before": page_to_json(ledger.before),
        "after": page_to_json(ledger.after),
        "euler_drop": ledger.euler_drop,
        "open_book_sign": ledger.open_book_sign,
    }


__all__ = [
    'dumps', 'rational_to_text', 'rational_from_text', 'word_to_json',
    'word_from_json', 'laurent_to_json', 'laurent_from_json',
    'matrix_to_json', 'matrix_from_json', 'sigma_class_to_json',
    'estimate_to_json', 'page_to_json', 'report_to_json',
    'prop41_row_to_json', 'closed_form_to_json', 'side_to_json',
    'theorem_to_json', 'ledger_to_json',
]
