"""Text format for twist words, relators, and derivation scripts (.mcg files).

Word grammar
------------
    word      :=  item*
    item      :=  atom ( '^' INT )?
    atom      :=  NAME | '[' word ']' '(' NAME ')' | '(' word ')'

Letters are separated by whitespace or '.', and '^k' repeats a letter |k|
times with the sign of k as exponent; '(w)^k' repeats a whole word.  The
conjugate form [w](a) is the twist along the image of curve a under the
word w.  Unicode input is accepted for a few names (the Greek delta and
macron accents map to d, kb, hb); output is always ASCII.

Script files are line oriented:

    relator NAME = WORD
    script NAME
    start NAME | start [label=L]: WORD
    ~ commute @I
    H @I left|right
    B @I fwd|rev1|rev2
    L @I inst=ID dir=up|down [out=K] [conj=WORD]
    C by=WORD
    shift K
    expand @I
    contract @I..J
    alias @I rel=ID [dir=fwd|rev]
    central @I len=K to=J
    checkpoint [label=L]: WORD
    final [label=L]: WORD
    end

Positions are 0-based letter indices into the current word.  Blank lines
and '#' comments are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .moves import (
    Alias,
    Braid,
    CentralSlide,
    Checkpoint,
    Commute,
    Contract,
    CyclicShift,
    Entry,
    Expand,
    Final,
    GlobalConjugate,
    Hurwitz,
    Lantern,
    Move,
    MoveScript,
    describe,
)
from .registry import Registry, UnknownCurve
from .words import Curve, Letter, PositiveRelator, Word, make_curve


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        where = f" at line {line}" if line else ""
        where += f", col {col}" if col else ""
        super().__init__(message + where)
        self.line = line
        self.col = col


_UNICODE_MAP = {
    "δ": " d ",          # delta
    "k̄": " kb ",        # k with combining macron
    "h̄": " hb ",
    "k¯": " kb ",
    "h¯": " hb ",
    "·": " ",            # middle dot separator
    "⋅": " ",
    ".": " ",
}

_TOKEN_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9]*|\^-?\d+|[\[\]()])")


def _ascii(text: str) -> str:
    for k, v in _UNICODE_MAP.items():
        text = text.replace(k, v)
    return text


def _tokenize(text: str, line: int = 0) -> list[str]:
    text = _ascii(text)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character {text[pos:].strip()[0]!r}", line, pos + 1)
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _WordParser:
    def __init__(self, tokens: list[str], line: int = 0) -> None:
        self.tokens = tokens
        self.i = 0
        self.line = line

    def peek(self) -> Optional[str]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of word", self.line)
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.line)

    def parse(self, closers: tuple[str, ...] = ()) -> Word:
        letters: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or tok in closers:
                return tuple(letters)
            letters.extend(self._item())

    def _item(self) -> Word:
        tok = self.take()
        if tok == "[":
            conj = self.parse(closers=("]",))
            self.expect("]")
            self.expect("(")
            name = self.take()
            if not name[0].isalpha():
                raise ParseError(f"expected curve name, got {name!r}", self.line)
            self.expect(")")
            base: Word = (Letter(make_curve(name, conj)),)
        elif tok == "(":
            base = self.parse(closers=(")",))
            self.expect(")")
        elif tok[0].isalpha():
            base = (Letter(Curve(tok)),)
        else:
            raise ParseError(f"unexpected token {tok!r}", self.line)
        exp = 1
        if self.peek() is not None and self.peek().startswith("^"):
            exp = int(self.take()[1:])
        if exp >= 0:
            out = base * exp
        else:
            out = tuple(l.inverse() for l in reversed(base)) * (-exp)
        return out


def parse_word(text: str, registry: Optional[Registry] = None, line: int = 0) -> Word:
    parser = _WordParser(_tokenize(text, line), line)
    w = parser.parse()
    if parser.peek() is not None:
        raise ParseError(f"trailing token {parser.peek()!r}", line)
    if registry is not None:
        _check_curves(w, registry, line)
    return w


def _check_curves(w: Word, registry: Registry, line: int) -> None:
    for l in w:
        if l.curve.name not in registry.curves:
            raise UnknownCurve(l.curve.name)
        _check_curves(l.curve.conj, registry, line)


def parse_relator(
    text: str, registry: Optional[Registry] = None, label: str = ""
) -> PositiveRelator:
    w = parse_word(text, registry)
    if any(l.exp != 1 for l in w):
        raise ParseError("relator contains inverse letters")
    return PositiveRelator(w, label)


# -- serialization ------------------------------------------------------------


def serialize_letter(l: Letter, count: int = 1) -> str:
    if l.curve.is_conjugate:
        base = f"[{serialize_word(l.curve.conj)}]({l.curve.name})"
    else:
        base = l.curve.name
    e = l.exp * count
    return base if e == 1 else f"{base}^{e}"


def serialize_word(w: Word) -> str:
    if not w:
        return "()"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        parts.append(serialize_letter(w[i], j - i))
        i = j
    return " ".join(parts)


def serialize(value) -> str:
    """Serialize a word, relator, script, or document to canonical ASCII."""
    if isinstance(value, PositiveRelator):
        return serialize_word(value.word)
    if isinstance(value, MoveScript):
        return _serialize_script(value)
    if isinstance(value, Document):
        return serialize_document(value)
    if isinstance(value, tuple):
        return serialize_word(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _serialize_script(script: MoveScript) -> str:
    lines = [f"script {script.name}"]
    label = f" label={script.start_label}" if script.start_label else ""
    lines.append(f"start{label}: {serialize_word(script.start)}")
    for entry in script.entries:
        if isinstance(entry, (Checkpoint, Final)):
            kind = "final" if isinstance(entry, Final) else "checkpoint"
            lab = f" label={entry.label}" if entry.label else ""
            lines.append(f"{kind}{lab}: {serialize_word(entry.word)}")
        else:
            lines.append(_serialize_move(entry))
    lines.append("end")
    return "\n".join(lines)


def _serialize_move(move: Move) -> str:
    if isinstance(move, Lantern):
        s = f"L @{move.pos} inst={move.inst} dir={move.direction} out={move.out}"
        if move.conj:
            s += f" conj={serialize_word(move.conj)}"
        return s
    if isinstance(move, GlobalConjugate):
        return f"C by={serialize_word(move.by)}"
    return describe(move)


def serialize_document(doc: "Document") -> str:
    chunks = []
    for name, rel in doc.relators.items():
        chunks.append(f"relator {name} = {serialize_word(rel.word)}")
    for script in doc.scripts.values():
        chunks.append(_serialize_script(script))
    return "\n\n".join(chunks) + "\n"


# -- script / document parsing --------------------------------------------------


@dataclass
class Document:
    relators: dict[str, PositiveRelator] = field(default_factory=dict)
    scripts: dict[str, MoveScript] = field(default_factory=dict)


_MOVE_RES = {
    "commute": re.compile(r"^~\s*commute\s+@(\d+)$"),
    "hurwitz": re.compile(r"^H\s+@(\d+)\s+(left|right)$"),
    "braid": re.compile(r"^B\s+@(\d+)\s+(fwd|rev1|rev2)$"),
    "lantern": re.compile(
        r"^L\s+@(\d+)\s+inst=(\w+)\s+dir=(up|down)(?:\s+out=(\d+))?(?:\s+conj=(.+))?$"
    ),
    "shift": re.compile(r"^shift\s+(-?\d+)$"),
    "conj": re.compile(r"^C\s+by=(.+)$"),
    "expand": re.compile(r"^expand\s+@(\d+)$"),
    "contract": re.compile(r"^contract\s+@(\d+)\.\.(\d+)$"),
    "alias": re.compile(r"^alias\s+@(\d+)\s+rel=(\w+)(?:\s+dir=(fwd|rev))?$"),
    "central": re.compile(r"^central\s+@(\d+)\s+len=(\d+)\s+to=(\d+)$"),
}

_CHECK_RE = re.compile(r"^(checkpoint|final)(?:\s+label=([\w()+-]+))?\s*:\s*(.+)$")
_START_RE = re.compile(r"^start(?:\s+label=([\w()+-]+))?\s*:\s*(.+)$")
_START_REF_RE = re.compile(r"^start\s+([\w()+-]+)$")


def _parse_move(line: str, lineno: int, registry: Optional[Registry]) -> Optional[Move]:
    stripped = line.strip()
    m = _MOVE_RES["commute"].match(stripped)
    if m:
        return Commute(int(m.group(1)))
    m = _MOVE_RES["hurwitz"].match(stripped)
    if m:
        return Hurwitz(int(m.group(1)), m.group(2))
    m = _MOVE_RES["braid"].match(stripped)
    if m:
        return Braid(int(m.group(1)), m.group(2))
    m = _MOVE_RES["lantern"].match(stripped)
    if m:
        pos, inst, direction, out, conj = m.groups()
        if registry is not None and inst not in registry.lanterns:
            raise ParseError(f"unknown lantern instance {inst!r}", lineno)
        return Lantern(
            int(pos),
            inst,
            direction,
            out=int(out) if out else 0,
            conj=parse_word(conj, registry, lineno) if conj else (),
        )
    m = _MOVE_RES["shift"].match(stripped)
    if m:
        return CyclicShift(int(m.group(1)))
    m = _MOVE_RES["conj"].match(stripped)
    if m:
        return GlobalConjugate(parse_word(m.group(1), registry, lineno))
    m = _MOVE_RES["expand"].match(stripped)
    if m:
        return Expand(int(m.group(1)))
    m = _MOVE_RES["contract"].match(stripped)
    if m:
        return Contract(int(m.group(1)), int(m.group(2)))
    m = _MOVE_RES["alias"].match(stripped)
    if m:
        return Alias(int(m.group(1)), m.group(2), m.group(3) or "fwd")
    m = _MOVE_RES["central"].match(stripped)
    if m:
        return CentralSlide(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    return None


def parse_document(text: str, registry: Optional[Registry] = None) -> Document:
    doc = Document()
    script_name: Optional[str] = None
    start: Optional[Word] = None
    start_label = ""
    entries: list[Entry] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        if script_name is None:
            if line.startswith("relator "):
                m = re.match(r"^relator\s+([\w()+-]+)\s*=\s*(.+)$", line)
                if not m:
                    raise ParseError("bad relator definition", lineno)
                name, body = m.groups()
                rel = parse_relator(body, registry, label=name)
                doc.relators[name] = rel
                continue
            m = re.match(r"^script\s+([\w()+-]+)$", line)
            if m:
                script_name = m.group(1)
                start, start_label, entries = None, "", []
                continue
            raise ParseError(f"unexpected line outside script: {line!r}", lineno)

        # inside a script block
        if line == "end":
            if start is None:
                raise ParseError(f"script {script_name} has no start", lineno)
            doc.scripts[script_name] = MoveScript(
                script_name, start, tuple(entries), start_label
            )
            script_name = None
            continue
        m = _START_REF_RE.match(line)
        if m and start is None:
            name = m.group(1)
            if name not in doc.relators:
                raise ParseError(f"start references unknown relator {name!r}", lineno)
            start = doc.relators[name].word
            start_label = name
            continue
        m = _START_RE.match(line)
        if m:
            start_label = m.group(1) or ""
            start = parse_word(m.group(2), registry, lineno)
            continue
        m = _CHECK_RE.match(line)
        if m:
            kind, label, body = m.groups()
            w = parse_word(body, registry, lineno)
            entry = Final(w, label or "") if kind == "final" else Checkpoint(w, label or "")
            entries.append(entry)
            continue
        move = _parse_move(line, lineno, registry)
        if move is not None:
            entries.append(move)
            continue
        raise ParseError(f"cannot parse script line {line!r}", lineno)

    if script_name is not None:
        raise ParseError(f"script {script_name} not closed with 'end'")
    return doc
