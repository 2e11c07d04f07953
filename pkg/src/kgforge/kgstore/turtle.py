"""Turtle reader/writer for the constrained profile this toolkit emits.

Supported syntax: ``@prefix`` directives, absolute ``<IRI>`` references,
prefixed names, the ``a`` keyword, quoted literals with ``\\``-escapes,
language tags, ``^^`` datatypes, ``;`` / ``,`` continuation and ``#``
comments. Blank nodes and multi-line literals are not supported (the writer
never produces them).
"""

from __future__ import annotations

import re

from .triples import Literal, Triple, node_sort_key

STANDARD_PREFIXES = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "skos": "http://www.w3.org/2004/02/skos/core#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

_RDF_TYPE = STANDARD_PREFIXES["rdf"] + "type"


class TurtleParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------- writing

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}

# locals safe to abbreviate: no leading digit, no trailing dot
_SAFE_LOCAL = re.compile(r"[A-Za-z_][\w-]*(?:\.[\w-]+)*")


def _escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)


def _encode_iri(iri: str, prefixes: dict[str, str]) -> str:
    for prefix, ns in prefixes.items():
        if iri.startswith(ns):
            local = iri[len(ns):]
            if _SAFE_LOCAL.fullmatch(local):
                return f"{prefix}:{local}"
    return f"<{iri}>"


def _encode_node(node, prefixes: dict[str, str]) -> str:
    if isinstance(node, Literal):
        out = f'"{_escape_literal(node.value)}"'
        if node.language:
            out += f"@{node.language}"
        elif node.datatype:
            out += f"^^{_encode_iri(node.datatype, prefixes)}"
        return out
    return _encode_iri(node, prefixes)


def dumps(triples, extra_prefixes: dict[str, str] | None = None) -> str:
    """Serialize triples to Turtle, deterministically: sorted prefixes,
    sorted subjects, rdf:type first, one predicate per line."""
    prefixes = dict(STANDARD_PREFIXES)
    if extra_prefixes:
        prefixes.update(extra_prefixes)
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in sorted(prefixes.items())]
    lines.append("")

    by_subject: dict[str, list[Triple]] = {}
    for t in triples:
        by_subject.setdefault(t.subject, []).append(t)

    for subject in sorted(by_subject):
        by_pred: dict[str, set] = {}
        for t in by_subject[subject]:
            by_pred.setdefault(t.predicate, set()).add(t.object)
        preds = sorted(by_pred, key=lambda p: (p != _RDF_TYPE, p))
        subj_txt = _encode_iri(subject, prefixes)
        for i, pred in enumerate(preds):
            pred_txt = "a" if pred == _RDF_TYPE else _encode_iri(pred, prefixes)
            objs = sorted(by_pred[pred], key=node_sort_key)
            obj_txt = ", ".join(_encode_node(o, prefixes) for o in objs)
            head = subj_txt if i == 0 else " " * len(subj_txt)
            tail = " ;" if i < len(preds) - 1 else " ."
            lines.append(f"{head} {pred_txt} {obj_txt}{tail}")
        lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<iri><[^<>\s]*>)
      | (?P<literal>"(?:[^"\\\n]|\\.)*")
      | (?P<dcaret>\^\^)
      | (?P<langtag>@[A-Za-z][A-Za-z0-9-]*)
      | (?P<pname>(?:[A-Za-z_][\w-]*)?:(?:[\w-][\w-]*(?:\.[\w-]+)*)?)
      | (?P<punct>[;,.])
      | (?P<word>[A-Za-z_][\w-]*)
    """,
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text: str) -> None:
        self.text = text
        self.items: list[tuple[str, str, int, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                line, col = self._loc(pos)
                raise TurtleParseError(f"unexpected character {text[pos]!r}", line, col)
            kind = m.lastgroup or ""
            if kind not in ("ws", "comment"):
                line, col = self._loc(pos)
                self.items.append((kind, m.group(0), line, col))
            pos = m.end()
        self.index = 0

    def _loc(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def peek(self):
        return self.items[self.index] if self.index < len(self.items) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            line, col = self._loc(len(self.text))
            raise TurtleParseError("unexpected end of input", line, col)
        self.index += 1
        return tok


def _unescape_literal(raw: str, line: int, col: int) -> str:
    body = raw[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        c = body[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(body):
            raise TurtleParseError("dangling escape in literal", line, col)
        nxt = body[i + 1]
        if nxt == "u" and i + 6 <= len(body):
            out.append(chr(int(body[i + 2:i + 6], 16)))
            i += 6
        elif nxt in _UNESCAPES:
            out.append(_UNESCAPES[nxt])
            i += 2
        else:
            raise TurtleParseError(f"unknown escape \\{nxt}", line, col)
    return "".join(out)


def loads(text: str) -> list[Triple]:
    """Parse constrained Turtle into a triple list. Malformed input raises
    :class:`TurtleParseError` with line/column."""
    prefixes = dict(STANDARD_PREFIXES)
    tok = _Tokens(text)
    triples: list[Triple] = []

    def resolve_pname(value: str, line: int, col: int) -> str:
        prefix, _, local = value.partition(":")
        if prefix not in prefixes:
            raise TurtleParseError(f"unknown prefix {prefix!r}", line, col)
        return prefixes[prefix] + local

    def parse_iri() -> str:
        kind, value, line, col = tok.next()
        if kind == "iri":
            return value[1:-1]
        if kind == "pname":
            return resolve_pname(value, line, col)
        raise TurtleParseError(f"expected IRI, got {value!r}", line, col)

    def parse_object():
        kind, value, line, col = tok.next()
        if kind == "iri":
            return value[1:-1]
        if kind == "pname":
            return resolve_pname(value, line, col)
        if kind == "literal":
            lexical = _unescape_literal(value, line, col)
            nxt = tok.peek()
            if nxt and nxt[0] == "langtag":
                tok.next()
                return Literal(lexical, language=nxt[1][1:])
            if nxt and nxt[0] == "dcaret":
                tok.next()
                return Literal(lexical, datatype=parse_iri())
            return Literal(lexical)
        raise TurtleParseError(f"expected object, got {value!r}", line, col)

    def expect_dot() -> None:
        kind, value, line, col = tok.next()
        if kind != "punct" or value != ".":
            raise TurtleParseError(f"expected '.', got {value!r}", line, col)

    while tok.peek() is not None:
        kind, value, line, col = tok.peek()

        if kind == "langtag" and value == "@prefix":
            tok.next()
            pk, pv, pl, pc = tok.next()
            if pk != "pname" or not pv.endswith(":"):
                raise TurtleParseError(f"expected prefix declaration, got {pv!r}", pl, pc)
            nk, nv, nl, nc = tok.next()
            if nk != "iri":
                raise TurtleParseError(f"expected namespace IRI, got {nv!r}", nl, nc)
            prefixes[pv[:-1]] = nv[1:-1]
            expect_dot()
            continue

        subject = parse_iri()
        while True:  # predicate-object groups separated by ';'
            kind, value, line, col = tok.next()
            if kind == "word" and value == "a":
                predicate = _RDF_TYPE
            elif kind == "iri":
                predicate = value[1:-1]
            elif kind == "pname":
                predicate = resolve_pname(value, line, col)
            else:
                raise TurtleParseError(f"expected predicate, got {value!r}", line, col)

            while True:  # objects separated by ','
                triples.append(Triple(subject, predicate, parse_object()))
                nxt = tok.peek()
                if nxt and nxt[0] == "punct" and nxt[1] == ",":
                    tok.next()
                    continue
                break

            kind, value, line, col = tok.next()
            if kind != "punct" or value not in ";.":
                raise TurtleParseError(f"expected ';' or '.', got {value!r}", line, col)
            if value == ".":
                break
            nxt = tok.peek()  # tolerate trailing ';' before '.'
            if nxt and nxt[0] == "punct" and nxt[1] == ".":
                tok.next()
                break
    return triples
