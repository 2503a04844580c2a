"""Bit-exact JSON documents for maps and amalgam words.

Every rational is serialized as a lowest-terms string, "p" or "p/q" with
q > 1, never as a JSON number, so round trips cannot lose precision.
Map documents carry the canonical breakpoint and image lists plus an
optional descriptor annotation (lambda and slope generators); a present
integer "offset" field marks a line map.  Word documents embed a context
block (the two descriptors and the edge map) and a syllable list.

Parsing is strict: unknown formats, non-canonical fraction strings, and
invariant violations all raise DocumentError with the offending field.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional, Union

from .amalgam import AmalgamContext, AmalgamWord, ContextError, Factor, SyllableError
from .maps import PLCircleMap, PLLineMap, lift
from .stein import GroupDescriptor

MAP_FORMAT = "plmonster.map/1"
WORD_FORMAT = "plmonster.word/1"

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


class DocumentError(ValueError):
    """Raised for malformed or non-canonical documents."""


def fraction_to_str(value: Fraction) -> str:
    """Lowest-terms string form: "p" for integers, "p/q" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def str_to_fraction(text: str) -> Fraction:
    """Parse a canonical fraction string; anything non-canonical fails."""
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise DocumentError(
            "expected a fraction string like '3' or '-1/4', got %r" % (text,)
        )
    try:
        value = Fraction(text)
    except ZeroDivisionError:
        raise DocumentError("zero denominator in %r" % text) from None
    if fraction_to_str(value) != text:
        raise DocumentError(
            "%r is not in canonical lowest-terms form (expected %r)"
            % (text, fraction_to_str(value))
        )
    return value


def _descriptor_fields(descriptor: Optional[GroupDescriptor]):
    if descriptor is None:
        return None, None
    return descriptor.lam, list(descriptor.generators)


def document_descriptor(doc: dict) -> Optional[GroupDescriptor]:
    """Reconstruct the descriptor annotation of a map document, if present.

    Uses the slope generator list; a bare lambda without generators is
    ambiguous and yields None.  Inconsistent lambda/slopes pairs fail.
    """
    slopes = doc.get("slopes")
    lam = doc.get("lambda")
    if slopes is None:
        return None
    if not isinstance(slopes, list) or not slopes:
        raise DocumentError("'slopes' must be a nonempty list of integers")
    for s in slopes:
        if isinstance(s, bool) or not isinstance(s, int) or s < 2:
            raise DocumentError("slope generator %r is not an integer >= 2" % (s,))
    descriptor = GroupDescriptor(*slopes)
    if lam is not None and lam != descriptor.lam:
        raise DocumentError(
            "'lambda' is %r but the slope generators multiply to %d"
            % (lam, descriptor.lam)
        )
    return descriptor


def map_to_document(
    value: Union[PLCircleMap, PLLineMap],
    descriptor: Optional[GroupDescriptor] = None,
) -> dict:
    """Document for a circle map, or for a line map (offset included)."""
    offset = None
    if isinstance(value, PLLineMap):
        offset = value.offset
        value = value.base
    if not isinstance(value, PLCircleMap):
        raise TypeError("expected a circle map or a line map")
    lam, slopes = _descriptor_fields(descriptor)
    doc = {
        "format": MAP_FORMAT,
        "lambda": lam,
        "slopes": slopes,
        "breakpoints": [fraction_to_str(b) for b in value.breakpoints],
        "images": [fraction_to_str(v) for v in value.images],
    }
    if offset is not None:
        doc["offset"] = offset
    return doc


def _fraction_list(doc: dict, key: str):
    values = doc.get(key)
    if not isinstance(values, list) or not values:
        raise DocumentError("'%s' must be a nonempty list" % key)
    out = []
    for i, text in enumerate(values):
        try:
            out.append(str_to_fraction(text))
        except DocumentError as exc:
            raise DocumentError("%s[%d]: %s" % (key, i, exc)) from None
    return out


def map_from_document(doc: dict) -> Union[PLCircleMap, PLLineMap]:
    """Inverse of map_to_document; validates every invariant."""
    if not isinstance(doc, dict):
        raise DocumentError("map document must be a JSON object")
    fmt = doc.get("format")
    if fmt != MAP_FORMAT:
        raise DocumentError(
            "unsupported map format %r (expected %r)" % (fmt, MAP_FORMAT)
        )
    breaks = _fraction_list(doc, "breakpoints")
    images = _fraction_list(doc, "images")
    document_descriptor(doc)  # validated for consistency even if unused
    try:
        base = PLCircleMap(breaks, images)
    except ValueError as exc:
        raise DocumentError("invalid map data: %s" % exc) from None
    offset = doc.get("offset")
    if offset is None:
        return base
    if isinstance(offset, bool) or not isinstance(offset, int):
        raise DocumentError("'offset' must be an integer")
    return lift(base, offset)


def format_map(
    value: Union[PLCircleMap, PLLineMap],
    descriptor: Optional[GroupDescriptor] = None,
) -> str:
    return json.dumps(map_to_document(value, descriptor), indent=2) + "\n"


def parse_map(text: str) -> Union[PLCircleMap, PLLineMap]:
    return map_from_document(_load_json(text))


def _load_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("invalid JSON: %s" % exc) from None


def _descriptor_block(descriptor: GroupDescriptor) -> dict:
    return {
        "generators": list(descriptor.generators),
        "lambda": descriptor.lam,
    }


def _descriptor_from_block(block, where: str) -> GroupDescriptor:
    if not isinstance(block, dict):
        raise DocumentError("%s: descriptor block must be an object" % where)
    generators = block.get("generators")
    if not isinstance(generators, list) or not generators:
        raise DocumentError(
            "%s: 'generators' must be a nonempty list of integers" % where
        )
    for g in generators:
        if isinstance(g, bool) or not isinstance(g, int) or g < 2:
            raise DocumentError(
                "%s: generator %r is not an integer >= 2" % (where, g)
            )
    descriptor = GroupDescriptor(*generators)
    lam = block.get("lambda")
    if lam is not None and lam != descriptor.lam:
        raise DocumentError(
            "%s: 'lambda' is %r but the generators multiply to %d"
            % (where, lam, descriptor.lam)
        )
    return descriptor


def word_to_document(word: AmalgamWord) -> dict:
    """Document for an amalgam word, embedding its full context."""
    ctx = word.context
    return {
        "format": WORD_FORMAT,
        "context": {
            "left": _descriptor_block(ctx.left_descriptor),
            "right": _descriptor_block(ctx.right_descriptor),
            "edge": map_to_document(ctx.edge),
        },
        "syllables": [
            {
                "factor": s.factor.value,
                "element": map_to_document(s.element),
            }
            for s in word.syllables
        ],
    }


def word_from_document(doc: dict) -> AmalgamWord:
    """Inverse of word_to_document; re-runs all context and syllable gates."""
    if not isinstance(doc, dict):
        raise DocumentError("word document must be a JSON object")
    fmt = doc.get("format")
    if fmt != WORD_FORMAT:
        raise DocumentError(
            "unsupported word format %r (expected %r)" % (fmt, WORD_FORMAT)
        )
    ctx_block = doc.get("context")
    if not isinstance(ctx_block, dict):
        raise DocumentError("'context' must be an object")
    left = _descriptor_from_block(ctx_block.get("left"), "context.left")
    right = _descriptor_from_block(ctx_block.get("right"), "context.right")
    edge_doc = ctx_block.get("edge")
    if not isinstance(edge_doc, dict):
        raise DocumentError("context.edge: missing map document")
    edge = map_from_document(edge_doc)
    if not isinstance(edge, PLLineMap):
        raise DocumentError("context.edge: must be a line map (offset required)")
    try:
        context = AmalgamContext(left, right, edge)
    except ContextError as exc:
        raise DocumentError("invalid context: %s" % exc) from None
    sylls = doc.get("syllables")
    if not isinstance(sylls, list):
        raise DocumentError("'syllables' must be a list")
    pairs = []
    for i, entry in enumerate(sylls):
        if not isinstance(entry, dict):
            raise DocumentError("syllable %d: must be an object" % i)
        factor = entry.get("factor")
        if factor not in (Factor.G1.value, Factor.G2.value):
            raise DocumentError(
                "syllable %d: factor must be 'G1' or 'G2', got %r" % (i, factor)
            )
        element_doc = entry.get("element")
        if not isinstance(element_doc, dict):
            raise DocumentError("syllable %d: missing element document" % i)
        try:
            element = map_from_document(element_doc)
        except DocumentError as exc:
            raise DocumentError("syllable %d: %s" % (i, exc)) from None
        if not isinstance(element, PLLineMap):
            raise DocumentError(
                "syllable %d: element must be a line map (offset required)" % i
            )
        pairs.append((Factor(factor), element))
    try:
        return AmalgamWord(context, pairs)
    except SyllableError as exc:
        raise DocumentError(str(exc)) from None


def format_word(word: AmalgamWord) -> str:
    return json.dumps(word_to_document(word), indent=2) + "\n"


def parse_word(text: str) -> AmalgamWord:
    return word_from_document(_load_json(text))
