"""Presentation file format and word syntax.

The file format is line based UTF-8 text::

    # comment
    gens: a b
    rel: a b a B A B
    meridian: a
    longitude: (ab)^3 a^-6

Word syntax: a lowercase generator name stands for the generator and the same
name with its first letter uppercased for its inverse (so for single-letter
generators, ``a``/``A``), juxtaposition with optional spaces, ``^n`` for
integer powers (negative allowed), parentheses for grouping.  Names are
matched longest-first, which keeps multi-letter names like ``b2``
unambiguous.
"""

from __future__ import annotations

from .presentations import (KnotGroupData, KnotValidationError, Presentation,
                            validate_knot_group)
from .words import Word


class ParseError(ValueError):
    """Syntax error with line/column position."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class UnknownGeneratorError(ParseError):
    """A word refers to a generator that was never declared."""


class _WordScanner:
    def __init__(self, text: str, names: tuple[str, ...], line: int, col0: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.col0 = col0
        # (literal, generator index, sign), longest literals first
        cands = []
        for idx, name in enumerate(names):
            cands.append((name, idx, 1))
            cands.append((name[0].upper() + name[1:], idx, -1))
        self.candidates = sorted(cands, key=lambda c: -len(c[0]))

    def error(self, message: str, pos: int | None = None) -> ParseError:
        p = self.pos if pos is None else pos
        return ParseError(message, self.line, self.col0 + p + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_word(self, depth: int = 0) -> Word:
        out = Word()
        while True:
            self.skip_ws()
            ch = self.peek()
            if not ch or ch == ")":
                if ch == ")" and depth == 0:
                    raise self.error("unbalanced ')'")
                return out
            out = out * self.parse_term(depth)

    def parse_term(self, depth: int) -> Word:
        atom = self.parse_atom(depth)
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            start = self.pos
            if self.peek() in "+-":
                self.pos += 1
            while self.peek().isdigit():
                self.pos += 1
            digits = self.text[start:self.pos]
            if not digits.lstrip("+-"):
                raise self.error("expected an integer exponent after '^'", start)
            return atom ** int(digits)
        return atom

    def parse_atom(self, depth: int) -> Word:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_word(depth + 1)
            self.skip_ws()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        for literal, idx, sign in self.candidates:
            if self.text.startswith(literal, self.pos):
                self.pos += len(literal)
                return Word.gen(idx, sign)
        token = self.text[self.pos:].split()[0] if self.text[self.pos:].split() else ch
        raise UnknownGeneratorError(f"unknown generator {token!r}",
                                    self.line, self.col0 + self.pos + 1)


def parse_word(text: str, names: tuple[str, ...], line: int = 1,
               col_offset: int = 0) -> Word:
    """Parse a single word against a generator list."""
    scanner = _WordScanner(text, names, line, col_offset)
    word = scanner.parse_word()
    scanner.skip_ws()
    if scanner.pos < len(text):
        raise scanner.error(f"trailing input {text[scanner.pos:]!r}")
    return word


def parse_presentation(text: str, *, require_knot: bool = True,
                       label: str = "") -> KnotGroupData:
    """Parse a presentation file into KnotGroupData.

    The meridian defaults to the first generator when no ``meridian:`` line is
    given.  With ``require_knot`` (the default) the homological knot-group
    checks run and a failure raises KnotValidationError; pass False to use the
    parser on arbitrary finitely presented groups.
    """
    names: tuple[str, ...] | None = None
    relator_words: list[Word] = []
    meridian: Word | None = None
    longitude: Word | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected '<directive>: ...'", lineno,
                             len(line) - len(line.lstrip()) + 1)
        key, _, rest = line.partition(":")
        key = key.strip()
        col0 = line.index(":") + 1
        if key == "gens":
            if names is not None:
                raise ParseError("duplicate 'gens' line", lineno, 1)
            names = tuple(rest.split())
            if not names:
                raise ParseError("no generators declared", lineno, col0 + 1)
        elif key in ("rel", "meridian", "longitude"):
            if names is None:
                raise ParseError(f"'{key}' before 'gens'", lineno, 1)
            if key == "rel" and not rest.strip():
                continue
            word = parse_word(rest, names, lineno, col0)
            if key == "rel":
                relator_words.append(word)
            elif key == "meridian":
                meridian = word
            else:
                longitude = word
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, 1)

    if names is None:
        raise ParseError("missing 'gens' line", 1, 1)
    pres = Presentation(generator_names=names, relators=tuple(relator_words))
    if meridian is None:
        meridian = Word.gen(0)
    data = KnotGroupData(presentation=pres, meridian=meridian,
                         longitude=longitude, label=label)
    if require_knot:
        report = validate_knot_group(data)
        if not report.passed:
            raise KnotValidationError(report)
    return data


def word_to_text(w: Word, names: tuple[str, ...]) -> str:
    """Render a word in file syntax; runs of length >= 3 use ``^k``."""
    if w.is_identity:
        return ""
    parts: list[str] = []
    run_letter: tuple[int, int] | None = None
    run_len = 0

    def flush() -> None:
        if run_letter is None:
            return
        gen, sign = run_letter
        name = names[gen] if sign > 0 else names[gen][0].upper() + names[gen][1:]
        parts.append(f"{name}^{run_len}" if run_len >= 3 else name * run_len)

    for letter in w:
        if letter == run_letter:
            run_len += 1
        else:
            flush()
            run_letter, run_len = letter, 1
    flush()
    return " ".join(parts)


def presentation_to_text(data: KnotGroupData) -> str:
    """Serialize KnotGroupData in the presentation file format."""
    pres = data.presentation
    lines = [f"gens: {' '.join(pres.generator_names)}"]
    lines.extend(f"rel: {word_to_text(r, pres.generator_names)}"
                 for r in pres.relators)
    lines.append(f"meridian: {word_to_text(data.meridian, pres.generator_names)}")
    if data.longitude is not None:
        lines.append(f"longitude: {word_to_text(data.longitude, pres.generator_names)}")
    return "\n".join(lines) + "\n"
