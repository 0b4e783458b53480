"""Boolean keyword query language: parsing, printing, and document matching.

Grammar (OR binds looser than AND, keywords are case-insensitive):

    expr   := term (OR term)*
    term   := factor (AND factor)*
    factor := PHRASE | "(" expr ")"
    PHRASE := quoted string | bare word

A phrase holds one or more whitespace-separated tokens and matches a
document iff those tokens appear contiguously in the document's token
stream (tokens are maximal runs of letters/digits, compared after Unicode
case folding).  There is no stemming and no diacritic stripping.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import EmptyQueryError, QuerySyntaxError

__all__ = [
    "Phrase",
    "Or",
    "And",
    "BooleanQuery",
    "parse_query",
    "print_query",
    "to_gdelt",
    "matches",
    "match_tokens",
    "tokenize",
]

_KEYWORDS = {"OR", "AND"}
# Characters with structural meaning inside query text.
_RESERVED_CHARS = '"()'

# Maximal runs of letters/digits; \w minus the underscore, Unicode-aware.
_TOKEN_RE = re.compile(r"[^\W_]+")


def tokenize(text: str) -> list[str]:
    """Split text into case-folded tokens (maximal letter/digit runs)."""
    return [t.casefold() for t in _TOKEN_RE.findall(text)]


@dataclass(frozen=True)
class Phrase:
    """One or more tokens that must appear contiguously in a document."""

    text: str

    def __post_init__(self):
        normalized = " ".join(self.text.split())
        if not normalized:
            raise ValueError("phrase is empty")
        if any(c in normalized for c in _RESERVED_CHARS):
            raise ValueError(f"reserved character in phrase {normalized!r}")
        object.__setattr__(self, "text", normalized)

    @property
    def tokens(self) -> list[str]:
        return tokenize(self.text)


@dataclass(frozen=True)
class Or:
    """Disjunction of two or more subqueries."""

    children: tuple["BooleanQuery", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("OR node needs at least 2 children")


@dataclass(frozen=True)
class And:
    """Conjunction of two or more subqueries."""

    children: tuple["BooleanQuery", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("AND node needs at least 2 children")


BooleanQuery = Union[Phrase, Or, And]


# ---------------------------------------------------------------------------
# Parsing


class _Token:
    __slots__ = ("kind", "value", "offset")

    def __init__(self, kind: str, value: str, offset: int):
        self.kind = kind  # "phrase" | "or" | "and" | "(" | ")"
        self.value = value
        self.offset = offset  # UTF-8 byte offset into the source text


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        off = _byte_offset(text, i)
        if c in "()":
            tokens.append(_Token(c, c, off))
            i += 1
        elif c == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise QuerySyntaxError("unbalanced quote", off)
            body = text[i + 1 : end]
            if not body.strip():
                raise QuerySyntaxError("empty quoted phrase", off)
            tokens.append(_Token("phrase", body, off))
            i = end + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '"()':
                j += 1
            word = text[i:j]
            upper = word.upper()
            if upper in _KEYWORDS:
                tokens.append(_Token(upper.lower(), word, off))
            else:
                tokens.append(_Token("phrase", word, off))
            i = j
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.pos = 0

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _eof_offset(self) -> int:
        return len(self.text.encode("utf-8"))

    def parse(self) -> BooleanQuery:
        node = self._expr()
        tok = self._peek()
        if tok is not None:
            raise QuerySyntaxError(f"unexpected {tok.value!r}", tok.offset)
        return node

    def _expr(self) -> BooleanQuery:
        parts = [self._term()]
        while (tok := self._peek()) is not None and tok.kind == "or":
            self.pos += 1
            parts.append(self._term())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def _term(self) -> BooleanQuery:
        parts = [self._factor()]
        while (tok := self._peek()) is not None and tok.kind == "and":
            self.pos += 1
            parts.append(self._factor())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def _factor(self) -> BooleanQuery:
        tok = self._peek()
        if tok is None:
            raise QuerySyntaxError("dangling operator", self._eof_offset())
        if tok.kind == "phrase":
            self.pos += 1
            try:
                return Phrase(tok.value)
            except ValueError as exc:
                raise QuerySyntaxError(str(exc), tok.offset) from None
        if tok.kind == "(":
            self.pos += 1
            node = self._expr()
            closing = self._peek()
            if closing is None or closing.kind != ")":
                raise QuerySyntaxError("unbalanced parenthesis", tok.offset)
            self.pos += 1
            return node
        raise QuerySyntaxError(f"unexpected {tok.value!r}", tok.offset)


def parse_query(text: str) -> BooleanQuery:
    """Parse query text into an expression tree.

    Raises EmptyQueryError on blank input and QuerySyntaxError (with the
    UTF-8 byte offset) on unbalanced quotes/parentheses or dangling
    operators.
    """
    if not text or not text.strip():
        raise EmptyQueryError("query is blank")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing (the inverse of parse_query: parse_query(print_query(t)) == t)


def _print_phrase(p: Phrase) -> str:
    # Multi-token phrases and bare words that would lex as keywords must
    # be quoted, otherwise re-parsing would change the tree.
    if " " in p.text or p.text.upper() in _KEYWORDS:
        return f'"{p.text}"'
    return p.text


def _print_node(node: BooleanQuery, parent: str | None) -> str:
    if isinstance(node, Phrase):
        return _print_phrase(node)
    if isinstance(node, Or):
        body = " OR ".join(_print_node(c, "or") for c in node.children)
        # An Or under Or would flatten on re-parse; under And it would
        # change precedence.  Both need parentheses.
        return f"({body})" if parent in ("or", "and") else body
    body = " AND ".join(_print_node(c, "and") for c in node.children)
    # An And under And would flatten on re-parse.
    return f"({body})" if parent == "and" else body


def print_query(query: BooleanQuery) -> str:
    """Render a query tree back to query-language text."""
    return _print_node(query, None)


def to_gdelt(query: BooleanQuery) -> str:
    """Render a query tree in GDELT DOC syntax.

    Multi-word phrases are quoted, OR groups are parenthesized with an
    uppercase OR, and conjunction is expressed by juxtaposition (the
    GDELT convention, which has no AND keyword).
    """
    return _gdelt_node(query, top=True)


def _gdelt_node(node: BooleanQuery, top: bool = False) -> str:
    if isinstance(node, Phrase):
        if " " in node.text:
            return f'"{node.text}"'
        return node.text
    if isinstance(node, Or):
        body = " OR ".join(_gdelt_node(c) for c in node.children)
        return f"({body})"
    body = " ".join(_gdelt_node(c) for c in node.children)
    return body if top else f"({body})"


# ---------------------------------------------------------------------------
# Matching


def _contains_run(haystack: list[str], needle: list[str]) -> bool:
    if not needle:
        return False
    n, m = len(haystack), len(needle)
    for i in range(n - m + 1):
        if haystack[i : i + m] == needle:
            return True
    return False


def match_tokens(query: BooleanQuery, doc_tokens: list[str]) -> bool:
    """Evaluate a query against a pre-tokenized document."""
    if isinstance(query, Phrase):
        return _contains_run(doc_tokens, query.tokens)
    if isinstance(query, Or):
        return any(match_tokens(c, doc_tokens) for c in query.children)
    return all(match_tokens(c, doc_tokens) for c in query.children)


def matches(query: BooleanQuery, document_text: str) -> bool:
    """True iff the document satisfies the query (case-insensitive)."""
    return match_tokens(query, tokenize(document_text))
