"""
SPARQL tokenizer

Keywords are case-insensitive, variables are case-sensitive. ``REGEX`` is a
keyword only so that validation can reject it with a dedicated code.
"""
import bisect
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from ..core.errors import LexError, SourcePosition
from ..core.terms import INT64_MAX, INT64_MIN

KEYWORDS = frozenset({
    "SELECT", "DISTINCT", "WHERE", "FILTER", "OPTIONAL", "UNION", "GROUP", "BY",
    "ORDER", "ASC", "DESC", "LIMIT", "OFFSET", "COUNT", "AS", "PREFIX", "REGEX",
})

PUNCTUATION = ("&&", "||", "!=", "<=", ">=", "{", "}", "(", ")", ".", "=", "<", ">", ",", ";", "*")


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    VAR = "variable"
    PNAME = "prefixed name"
    IRI = "IRI"
    STRING = "string"
    INTEGER = "integer"
    DOUBLE = "double"
    BOOLEAN = "boolean"
    PUNCT = "punctuation"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    value: Union[str, int, float, bool, tuple]
    text: str = field(compare=False)
    position: SourcePosition = field(compare=False)

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        return repr(self.text)


# absolute IRIs only; ``?a<40&&?a>20`` lexes as two comparisons
_IRI = re.compile(r"<([A-Za-z][A-Za-z0-9+.\-]*:[^<>\"{}|^`\\\x00-\x20]*)>")
_VAR = re.compile(r"\?([A-Za-z0-9_]*)")
_VAR_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_NUMBER = re.compile(r"[+-]?(?:[0-9]+\.[0-9]+(?:[eE][+-]?[0-9]+)?|[0-9]+[eE][+-]?[0-9]+|[0-9]+)")
_WORD = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_LOCAL = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_-]*")
_SPACE = re.compile(r"\s+")
DIGITS = "0123456789"
_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "'": "'", "\\": "\\"}


class Lexer:
    """Turns query text into tokens, tracking line and column for diagnostics"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self._line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def position(self, offset: int) -> SourcePosition:
        line_index = bisect.bisect_right(self._line_starts, offset) - 1
        return SourcePosition(offset, line_index + 1, offset - self._line_starts[line_index] + 1)

    def error(self, message: str, offset: int) -> LexError:
        return LexError(message, self.position(offset))

    def tokens(self) -> list[Token]:
        result = []
        while True:
            token = self.next_token()
            result.append(token)
            if token.kind is TokenKind.EOF:
                return result

    def _make(self, kind: TokenKind, value, start: int) -> Token:
        return Token(kind, value, self.text[start:self.pos], self.position(start))

    def _skip_ignorable(self) -> None:
        while self.pos < len(self.text):
            match = _SPACE.match(self.text, self.pos)
            if match:
                self.pos = match.end()
                continue
            if self.text[self.pos] == "#":
                end = self.text.find("\n", self.pos)
                self.pos = len(self.text) if end == -1 else end
                continue
            return

    def next_token(self) -> Token:
        self._skip_ignorable()
        start = self.pos
        if start >= len(self.text):
            return Token(TokenKind.EOF, "", "", self.position(start))

        char = self.text[start]

        if char == "<":
            match = _IRI.match(self.text, start)
            if match:
                self.pos = match.end()
                return self._make(TokenKind.IRI, match.group(1), start)

        if char == "?":
            match = _VAR.match(self.text, start)
            name = match.group(1)
            if not _VAR_NAME.match(name):
                raise self.error(f"invalid variable name '?{name}'", start)
            self.pos = match.end()
            return self._make(TokenKind.VAR, name, start)

        if char in "\"'":
            return self._string(start)

        if char in DIGITS or (char in "+-" and start + 1 < len(self.text) and self.text[start + 1] in DIGITS):
            return self._number(start)

        if char.isascii() and char.isalpha():
            return self._word(start)

        for punct in PUNCTUATION:
            if self.text.startswith(punct, start):
                self.pos = start + len(punct)
                return self._make(TokenKind.PUNCT, punct, start)

        raise self.error(f"unexpected character '{char}'", start)

    def _string(self, start: int) -> Token:
        quote = self.text[start]
        chars = []
        index = start + 1
        while True:
            if index >= len(self.text) or self.text[index] == "\n":
                raise self.error("unterminated string literal", start)
            char = self.text[index]
            if char == quote:
                break
            if char == "\\":
                escaped = self.text[index + 1] if index + 1 < len(self.text) else ""
                if escaped not in _ESCAPES:
                    raise self.error(f"invalid escape sequence '\\{escaped}'", index)
                chars.append(_ESCAPES[escaped])
                index += 2
                continue
            chars.append(char)
            index += 1
        self.pos = index + 1
        return self._make(TokenKind.STRING, "".join(chars), start)

    def _number(self, start: int) -> Token:
        match = _NUMBER.match(self.text, start)
        text = match.group(0)
        self.pos = match.end()
        if "." in text or "e" in text or "E" in text:
            value = float(text)
            if not math.isfinite(value):
                raise self.error(f"double literal {text} is out of range", start)
            return self._make(TokenKind.DOUBLE, value, start)
        value = int(text)
        if not INT64_MIN <= value <= INT64_MAX:
            raise self.error(f"integer literal {text} does not fit in 64 bits", start)
        return self._make(TokenKind.INTEGER, value, start)

    def _word(self, start: int) -> Token:
        match = _WORD.match(self.text, start)
        word = match.group(0)
        self.pos = match.end()
        if self.pos < len(self.text) and self.text[self.pos] == ":":
            self.pos += 1
            local = _LOCAL.match(self.text, self.pos)
            local_name = ""
            if local:
                local_name = local.group(0)
                self.pos = local.end()
            return self._make(TokenKind.PNAME, (word, local_name), start)
        upper = word.upper()
        if upper in KEYWORDS:
            return self._make(TokenKind.KEYWORD, upper, start)
        if word.lower() in ("true", "false"):
            return self._make(TokenKind.BOOLEAN, word.lower() == "true", start)
        raise self.error(f"unexpected word '{word}'", start)


def tokenize(text: str) -> list[Token]:
    """Tokenize ``text``; the last token is always EOF"""
    return Lexer(text).tokens()
