"""Turtle-subset reader and writer.

Supported syntax: @prefix declarations, absolute IRIs, prefixed names, the
'a' keyword, double-quoted string literals (with escapes, language tags, and
datatype annotations), numeric and boolean literals, ';' and ',' statement
abbreviations, and '#' comments.  Blank nodes, collections, multi-line
strings, and @base are outside the subset and raise a clear syntax error.

Language tags and datatypes are parsed and discarded: the validator compares
lexical forms only.
"""

from __future__ import annotations

import re
from typing import Optional

from .errors import TurtleSyntaxError, UnknownPrefixError
from .model import RDF_TYPE, Iri, KnowledgeGraph, Triple

_PREFIX_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*|")
_LOCAL_RE = re.compile(r"[A-Za-z0-9_\-.%]*")
# Decimals require digits after the dot so "5." stays NUMBER + statement dot.
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.\d+|\.\d+|\d+)(?:[eE][+-]?\d+)?")
_BARE_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")

_STRING_ESCAPES = {
    "t": "\t",
    "n": "\n",
    "r": "\r",
    "b": "\b",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_SERIALIZE_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


class _Token:
    __slots__ = ("kind", "value", "line", "column", "extra")

    def __init__(self, kind: str, value, line: int, column: int, extra=None):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column
        self.extra = extra


class _Lexer:
    """Single-pass tokenizer with line/column tracking."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        raise TurtleSyntaxError(line or self.line, column or self.col, message)

    def _advance(self, count: int):
        chunk = self.text[self.pos : self.pos + count]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = count - chunk.rfind("\n")
        else:
            self.col += count
        self.pos += count

    def _skip_trivia(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance(1)
            elif ch == "#":
                end = self.text.find("\n", self.pos)
                self._advance((end if end != -1 else len(self.text)) - self.pos)
            else:
                return

    def next_token(self) -> _Token:
        self._skip_trivia()
        if self.pos >= len(self.text):
            return _Token("EOF", None, self.line, self.col)

        line, col = self.line, self.col
        text, pos = self.text, self.pos
        ch = text[pos]

        if ch == ".":
            # A dot can also start a decimal like ".5"; check the next char.
            if pos + 1 < len(text) and text[pos + 1].isdigit():
                return self._number(line, col)
            self._advance(1)
            return _Token("DOT", ".", line, col)
        if ch == ";":
            self._advance(1)
            return _Token("SEMI", ";", line, col)
        if ch == ",":
            self._advance(1)
            return _Token("COMMA", ",", line, col)
        if ch == "<":
            end = text.find(">", pos + 1)
            if end == -1:
                self.error("unterminated IRI")
            iri = text[pos + 1 : end]
            if any(c in iri for c in ' "{}|^`\n'):
                self.error("invalid character inside IRI")
            self._advance(end + 1 - pos)
            return _Token("IRIREF", iri, line, col)
        if ch == '"':
            return self._string(line, col)
        if ch == "'":
            self.error("single-quoted literals are outside the supported subset")
        if ch == "@":
            word = _BARE_RE.match(text, pos + 1)
            keyword = word.group(0) if word else ""
            if keyword == "prefix":
                self._advance(len("@prefix"))
                return _Token("PREFIX_DECL", "@prefix", line, col)
            if keyword == "base":
                self.error("@base is outside the supported subset")
            self.error(f"unexpected directive '@{keyword}'")
        if ch in "[](":
            self.error("blank-node property lists and collections are outside the supported subset")
        if ch == "_":
            self.error("blank-node labels are outside the supported subset")
        if ch.isdigit() or (ch in "+-" and pos + 1 < len(text) and text[pos + 1] in "0123456789."):
            return self._number(line, col)

        # Bare word: 'a', boolean, or the prefix part of a prefixed name.
        bare = _BARE_RE.match(text, pos)
        word = bare.group(0) if bare else ""
        after = pos + len(word)
        if after < len(text) and text[after] == ":":
            return self._pname(word, line, col)
        if ch == ":":
            return self._pname("", line, col)
        if word == "a":
            self._advance(1)
            return _Token("A", "a", line, col)
        if word in ("true", "false"):
            self._advance(len(word))
            return _Token("BOOLEAN", word, line, col)
        if word == "PREFIX":
            self.error("SPARQL-style PREFIX is outside the supported subset; use @prefix")
        self.error(f"unexpected character {ch!r}")

    def _pname(self, prefix: str, line: int, col: int) -> _Token:
        start = self.pos + len(prefix) + 1  # past the colon
        local_match = _LOCAL_RE.match(self.text, start)
        local = local_match.group(0)
        # A trailing dot belongs to the statement, not the name.
        while local.endswith("."):
            local = local[:-1]
        self._advance(start + len(local) - self.pos)
        return _Token("PNAME", (prefix, local), line, col)

    def _number(self, line: int, col: int) -> _Token:
        match = _NUMBER_RE.match(self.text, self.pos)
        if not match:
            self.error("malformed numeric literal")
        lexical = match.group(0)
        self._advance(len(lexical))
        return _Token("NUMBER", lexical, line, col)

    def _string(self, line: int, col: int) -> _Token:
        text = self.text
        if text.startswith('"""', self.pos):
            self.error("multi-line string literals are outside the supported subset")
        i = self.pos + 1
        out: list[str] = []
        while True:
            if i >= len(text) or text[i] == "\n":
                self.error("unterminated string literal", line, col)
            ch = text[i]
            if ch == '"':
                i += 1
                break
            if ch == "\\":
                if i + 1 >= len(text):
                    self.error("unterminated string escape", line, col)
                esc = text[i + 1]
                if esc in _STRING_ESCAPES:
                    out.append(_STRING_ESCAPES[esc])
                    i += 2
                elif esc in ("u", "U"):
                    width = 4 if esc == "u" else 8
                    hexpart = text[i + 2 : i + 2 + width]
                    if len(hexpart) != width or any(c not in "0123456789abcdefABCDEF" for c in hexpart):
                        self.error(f"malformed \\{esc} escape", line, col)
                    out.append(chr(int(hexpart, 16)))
                    i += 2 + width
                else:
                    self.error(f"unsupported string escape '\\{esc}'", line, col)
            else:
                out.append(ch)
                i += 1
        value = "".join(out)
        self._advance(i - self.pos)

        # Optional language tag or datatype annotation; both are discarded.
        if self.text.startswith("@", self.pos):
            lang = re.match(r"@[A-Za-z]+(-[A-Za-z0-9]+)*", self.text[self.pos :])
            if not lang:
                self.error("malformed language tag")
            self._advance(lang.end())
        elif self.text.startswith("^^", self.pos):
            self._advance(2)
            datatype = self.next_token()
            if datatype.kind not in ("IRIREF", "PNAME"):
                self.error("expected datatype IRI after '^^'", datatype.line, datatype.column)
        return _Token("STRING", value, line, col)


class _Parser:
    def __init__(self, text: str):
        self.lexer = _Lexer(text)
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []
        self.token = self.lexer.next_token()

    def _next(self):
        self.token = self.lexer.next_token()

    def _expect(self, kind: str, what: str) -> _Token:
        token = self.token
        if token.kind != kind:
            raise TurtleSyntaxError(token.line, token.column, f"expected {what}")
        self._next()
        return token

    def _resolve(self, token: _Token) -> Iri:
        prefix, local = token.value
        if prefix not in self.prefixes:
            raise UnknownPrefixError(prefix, token.line, token.column)
        try:
            return Iri(self.prefixes[prefix] + local)
        except ValueError as exc:
            raise TurtleSyntaxError(token.line, token.column, str(exc)) from exc

    def _iri(self, token: _Token) -> Iri:
        if token.kind == "IRIREF":
            try:
                return Iri(token.value)
            except ValueError as exc:
                raise TurtleSyntaxError(token.line, token.column, str(exc)) from exc
        return self._resolve(token)

    def parse(self) -> tuple[list[Triple], dict[str, str]]:
        while self.token.kind != "EOF":
            if self.token.kind == "PREFIX_DECL":
                self._prefix_decl()
            else:
                self._statement()
        return self.triples, self.prefixes

    def _prefix_decl(self):
        self._next()
        name = self._expect("PNAME", "a prefix name ending in ':'")
        prefix, local = name.value
        if local:
            raise TurtleSyntaxError(name.line, name.column, "prefix declaration must end with ':'")
        iri = self._expect("IRIREF", "an IRI for the prefix")
        self._expect("DOT", "'.' after @prefix declaration")
        self.prefixes[prefix] = iri.value

    def _statement(self):
        token = self.token
        if token.kind not in ("IRIREF", "PNAME"):
            raise TurtleSyntaxError(token.line, token.column, "expected a subject IRI")
        subject = self._iri(token)
        self._next()

        while True:
            predicate = self._verb()
            self._object_list(subject, predicate)
            if self.token.kind == "SEMI":
                # Swallow repeated/trailing semicolons.
                while self.token.kind == "SEMI":
                    self._next()
                if self.token.kind == "DOT":
                    break
                continue
            break
        self._expect("DOT", "'.' at end of statement")

    def _verb(self) -> Iri:
        token = self.token
        if token.kind == "A":
            self._next()
            return Iri(RDF_TYPE)
        if token.kind in ("IRIREF", "PNAME"):
            iri = self._iri(token)
            self._next()
            return iri
        raise TurtleSyntaxError(token.line, token.column, "expected a predicate")

    def _object_list(self, subject: Iri, predicate: Iri):
        while True:
            token = self.token
            if token.kind in ("IRIREF", "PNAME"):
                obj: object = self._iri(token)
                self._next()
            elif token.kind in ("STRING", "NUMBER", "BOOLEAN"):
                if token.kind == "STRING" and token.value == "":
                    raise TurtleSyntaxError(token.line, token.column, "empty literals are not allowed")
                obj = token.value
                self._next()
            else:
                raise TurtleSyntaxError(token.line, token.column, "expected an object")
            self.triples.append(Triple(subject=subject, predicate=predicate, object=obj))
            if self.token.kind == "COMMA":
                self._next()
                continue
            return


def parse_turtle(text: str, origin: str = "turtle-file") -> KnowledgeGraph:
    """Parse a Turtle document into a deduplicated KnowledgeGraph.

    Prefixed names are expanded to absolute IRIs; the first occurrence order
    of subjects (and triples) is preserved.
    """
    triples, _ = _Parser(text).parse()
    return KnowledgeGraph.from_triples(triples, origin=origin)


def _escape_literal(value: str) -> str:
    out = []
    for ch in value:
        if ch in _SERIALIZE_ESCAPES:
            out.append(_SERIALIZE_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def serialize_turtle(kg: KnowledgeGraph) -> str:
    """Write a graph in the supported subset (one plain statement per line).

    parse_turtle(serialize_turtle(kg)) reproduces kg's triple set exactly.
    """
    lines = []
    for t in kg.triples:
        if isinstance(t.object, Iri):
            obj = f"<{t.object.value}>"
        else:
            obj = f'"{_escape_literal(t.object)}"'
        lines.append(f"<{t.subject.value}> <{t.predicate.value}> {obj} .")
    return "\n".join(lines) + ("\n" if lines else "")
