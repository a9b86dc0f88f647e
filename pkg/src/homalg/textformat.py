"""Readers for the two text formats.

Presentation format (one declaration per line, ``#`` starts a comment)::

    field Q            | field F 7
    vertex 1
    arrow a 1 2
    relation 1*a*b + -1/2*c*d
    degcap 30

Structure-constant format (as written by ``GradedBasicAlgebra.serialize``)::

    algebra
    field Q
    labels 1 2
    elem 0 1 1 0
    prod 2 3 -> 1*4 + -1*5
"""

from __future__ import annotations

import re

from .algebra import AlgebraError, GradedBasicAlgebra
from .fields import QQ, field_from_spec
from .quiver import (
    Presentation,
    PresentationError,
    Quiver,
    compile_presentation,
    make_relation,
)

_NUMBER = re.compile(r"^[+-]?\d+(/\d+)?$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield lineno, raw, body


def _col(raw, token):
    i = raw.find(token)
    return i + 1 if i >= 0 else 1


def is_structure_format(text: str) -> bool:
    for _, _, body in _lines(text):
        kw = body.split()[0]
        if kw != "field":
            return kw in ("algebra", "labels", "elem")
    return False


def parse_presentation(text: str, name: str | None = None) -> Presentation:
    field = QQ
    vertices, arrows, rel_specs = [], [], []
    arrow_lines = []
    degcap = 30
    for lineno, raw, body in _lines(text):
        words = body.split()
        kw = words[0]
        try:
            if kw == "field":
                field = field_from_spec("".join(words[1:]))
            elif kw == "vertex":
                if len(words) != 2:
                    raise ParseError("expected 'vertex <label>'", lineno, 1)
                vertices.append(words[1])
            elif kw == "arrow":
                if len(words) != 4:
                    raise ParseError("expected 'arrow <label> <src> <tgt>'", lineno, 1)
                if not _IDENT.match(words[1]):
                    raise ParseError(f"arrow label {words[1]!r} must start with a letter", lineno, _col(raw, words[1]))
                arrows.append(tuple(words[1:]))
                arrow_lines.append((lineno, raw))
            elif kw == "relation":
                rel_specs.append((lineno, raw, body[body.index("relation") + len("relation") :]))
            elif kw == "degcap":
                if len(words) != 2 or not words[1].isdigit():
                    raise ParseError("expected 'degcap <integer>'", lineno, 1)
                degcap = int(words[1])
            else:
                raise ParseError(f"unknown keyword {kw!r}", lineno, _col(raw, kw))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno, 1) from exc
    declared = set(vertices)
    for (lineno, raw), (label, src, tgt) in zip(arrow_lines, arrows):
        for v in (src, tgt):
            if v not in declared:
                raise ParseError(f"arrow {label} uses undeclared vertex {v!r}", lineno, _col(raw, v))
    try:
        q = Quiver(vertices, arrows)
    except PresentationError as exc:
        raise ParseError(str(exc)) from exc
    relations = []
    for lineno, raw, spec in rel_specs:
        terms = []
        for term in _split_terms(spec):
            factors = [f.strip() for f in term.split("*")]
            coeff = "1"
            if factors and _NUMBER.match(factors[0]):
                coeff = factors.pop(0)
            elif factors and factors[0].startswith("-") and len(factors[0]) > 1:
                coeff, factors[0] = "-1", factors[0][1:].strip()
            if not factors or any(not f for f in factors):
                raise ParseError(f"malformed term {term.strip()!r}", lineno, _col(raw, term.strip()))
            for f in factors:
                if f not in q.arrow:
                    raise ParseError(f"unknown arrow {f!r}", lineno, _col(raw, f))
            try:
                terms.append((field.parse(coeff), tuple(factors)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coefficient {coeff!r}", lineno, _col(raw, coeff)) from exc
        try:
            relations.append(make_relation(q, terms, field))
        except PresentationError as exc:
            exc.line = lineno
            raise type(exc)(f"line {lineno}: {exc}") from exc
    return Presentation(q, relations, degcap, field, name)


def _split_terms(spec):
    # split on '+' and on '-' that start a new term
    spec = spec.strip()
    out, cur = [], ""
    i = 0
    while i < len(spec):
        ch = spec[i]
        if ch == "+" and cur.strip():
            out.append(cur)
            cur = ""
        elif ch == "-" and cur.strip() and cur.rstrip()[-1] != "*":
            out.append(cur)
            cur = "-"
        else:
            cur += ch
        i += 1
    if cur.strip():
        out.append(cur)
    return [t for t in (x.strip().lstrip("+").strip() for x in out) if t]


def parse_structure(text: str, name: str | None = None) -> GradedBasicAlgebra:
    field = QQ
    labels = None
    elems = {}
    table = {}
    for lineno, raw, body in _lines(text):
        words = body.split()
        kw = words[0]
        if kw == "algebra":
            continue
        if kw == "field":
            try:
                field = field_from_spec("".join(words[1:]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from exc
        elif kw == "labels":
            labels = words[1:]
        elif kw == "elem":
            if labels is None:
                raise ParseError("'elem' before 'labels'", lineno, 1)
            if len(words) != 5:
                raise ParseError("expected 'elem <index> <u> <v> <deg>'", lineno, 1)
            try:
                idx, u, v, d = int(words[1]), labels.index(words[2]), labels.index(words[3]), int(words[4])
            except ValueError as exc:
                raise ParseError(f"bad element line: {exc}", lineno, 1) from exc
            elems[idx] = (u, v, d)
        elif kw == "prod":
            if "->" not in words:
                raise ParseError("expected 'prod <i> <j> -> <terms>'", lineno, 1)
            try:
                i, j = int(words[1]), int(words[2])
                terms = []
                rhs = body.split("->", 1)[1]
                for term in _split_terms(rhs):
                    c, k = term.rsplit("*", 1)
                    terms.append((int(k), field.parse(c)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad product line: {exc}", lineno, 1) from exc
            table[(i, j)] = tuple(terms)
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, _col(raw, kw))
    if labels is None:
        raise ParseError("missing 'labels' line")
    if sorted(elems) != list(range(len(elems))):
        raise ParseError("element indices must be 0..dim-1")
    try:
        alg = GradedBasicAlgebra(field, labels, [elems[i] for i in range(len(elems))], table, name=name)
        alg.check(exhaustive=False)
    except AlgebraError as exc:
        raise ParseError(str(exc)) from exc
    return alg


def load_algebra(text: str, name: str | None = None):
    """Parse either format; returns ``(algebra, presentation_or_None)``."""
    if is_structure_format(text):
        return parse_structure(text, name), None
    pres = parse_presentation(text, name)
    return compile_presentation(pres), pres
