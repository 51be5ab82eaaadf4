"""Attribute-value normalization.

Cross-source comparison is only meaningful after formatting noise is removed:
casing, duplicated whitespace, diacritics, phone punctuation, date framing.
Every normalizer is deterministic and idempotent.
"""

from __future__ import annotations

import re
import unicodedata

NORMALIZER_KINDS = ("name", "phone", "address", "year", "generic")

_DIGIT_RUN = re.compile(r"[0-9]{4}")
_NON_DIGIT = re.compile(r"[^0-9]+")


def _strip_marks(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def _collapse_ws(text: str) -> str:
    return " ".join(text.split())


def _strip_edge_punct(text: str) -> str:
    return text.strip().strip("".join(_EDGE_PUNCT)).strip()


# Punctuation commonly wrapping names/addresses; kept explicit so stripping
# stays stable under repeated application.
_EDGE_PUNCT = ".,;:!?\"'`´()[]{}<>*+-/\\|~_#&"


def _normalize_text(value: str) -> str:
    out = _strip_marks(value)
    out = out.casefold()
    out = _collapse_ws(out)
    out = _strip_edge_punct(out)
    return _collapse_ws(out)


def normalize_phone(value: str) -> str:
    """Digits only, with leading zeros (and thereby trunk prefixes) dropped."""
    digits = _NON_DIGIT.sub("", value)
    return digits.lstrip("0")


def normalize_year(value: str) -> str:
    """The first 4-digit run in the value, or '' when there is none."""
    match = _DIGIT_RUN.search(value)
    return match.group(0) if match else ""


def normalize(value: str, kind: str = "generic") -> str:
    """Normalize one attribute value.

    name/address: fold case, drop diacritics, collapse whitespace, strip
    wrapping punctuation.  phone: digits only, no leading zeros.  year: first
    4-digit run.  generic: fold case and collapse whitespace.  The result may
    be empty.
    """
    if kind in ("name", "address"):
        return _normalize_text(value)
    if kind == "phone":
        return normalize_phone(value)
    if kind == "year":
        return normalize_year(value)
    if kind == "generic":
        return _collapse_ws(value.casefold())
    raise ValueError(f"unknown normalizer kind: {kind}")


def default_normalizer(prop: str) -> str:
    """Pick a normalizer kind from a property's name.

    Explicit per-property configuration always wins over this heuristic.
    """
    lowered = prop.casefold()
    if "phone" in lowered or "telephone" in lowered or lowered == "fax":
        return "phone"
    if lowered == "name":
        return "name"
    if "address" in lowered or "street" in lowered:
        return "address"
    if "year" in lowered or "birth" in lowered or "death" in lowered:
        return "year"
    return "generic"
