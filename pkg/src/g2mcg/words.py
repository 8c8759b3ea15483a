"""Free-group style words over signed Dehn-twist letters.

A word is a tuple of letters; a letter is a twist along a curve with
exponent +1 or -1 (powers are spelled out as repeated letters, which keeps
pattern matching for rewrite moves uniform).  A curve is either a plain
named curve (the chain curves c1..c5 plus the special curves of the
registry) or a conjugate curve w(a): the image of a plain curve a under
the mapping class of a word w.  Twists along conjugate curves satisfy
t_{w(a)} = w t_a w^-1, which is what expand_letter / contract_subword
convert between.

Everything here is immutable and purely structural: two conjugate curves
with different but equivalent conjugating words compare unequal.  The
registry module layers a semantic normal form on top of this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


class NotConjugateForm(ValueError):
    """Raised when a plain letter is asked to expand as w t_a w^-1."""


class SpanNotConjugatePattern(ValueError):
    """Raised when a span does not read u . t_a^e . u^-1."""


@dataclass(frozen=True)
class Curve:
    """A simple closed curve: a plain name, optionally pushed around by a word.

    ``conj`` is the conjugating word; the invariant kept by ``make_curve`` is
    that the inner curve of a conjugate is always plain, so nesting flattens
    to a single level.
    """

    name: str
    conj: "Word" = ()

    @property
    def is_conjugate(self) -> bool:
        return len(self.conj) > 0

    def __repr__(self) -> str:
        if not self.conj:
            return self.name
        return f"[{word_str(self.conj)}]({self.name})"


@dataclass(frozen=True)
class Letter:
    """One signed Dehn twist."""

    curve: Curve
    exp: int = 1

    def __post_init__(self) -> None:
        if self.exp not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {self.exp}")

    def inverse(self) -> "Letter":
        return Letter(self.curve, -self.exp)

    def __repr__(self) -> str:
        return repr(self.curve) + ("" if self.exp == 1 else "^-1")


Word = tuple[Letter, ...]


def make_curve(name: str, conj: Word = ()) -> Curve:
    """Build a curve, flattening a conjugate-of-conjugate into one level."""
    return Curve(name, tuple(conj))


def word(letters: Iterable[Letter]) -> Word:
    return tuple(letters)


def letter(name: str, exp: int = 1, conj: Word = ()) -> Letter:
    return Letter(make_curve(name, conj), exp)


def word_str(w: Word) -> str:
    return " ".join(repr(l) for l in w) if w else "()"


def invert(w: Word) -> Word:
    """Reversed sequence with flipped exponents; w * invert(w) freely reduces away."""
    return tuple(l.inverse() for l in reversed(w))


def free_reduce(w: Word) -> Word:
    """Cancel adjacent t t^-1 pairs on structurally equal curves (idempotent)."""
    out: list[Letter] = []
    for l in w:
        if out and out[-1].curve == l.curve and out[-1].exp == -l.exp:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def conjugate(w: Word, by: Word) -> Word:
    """free_reduce(by . w . by^-1)."""
    return free_reduce(tuple(by) + tuple(w) + invert(by))


def concat(*ws: Word) -> Word:
    out: list[Letter] = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(invert(w), -k)
    return concat(*([w] * k))


def expand_letter(l: Letter) -> Word:
    """Rewrite a twist along w(a) as the word w . t_a^e . w^-1."""
    if not l.curve.is_conjugate:
        raise NotConjugateForm(f"{l!r} is a plain letter")
    u = l.curve.conj
    return concat(u, (Letter(Curve(l.curve.name), l.exp),), invert(u))


def contract_subword(w: Word, lo: int, hi: int, expect: Optional[Curve] = None) -> Word:
    """Replace the span w[lo:hi], which must read u . t_a^e . u^-1, by t_{u(a)}^e.

    The span length must be odd; with ``expect`` given, the contracted curve
    must additionally equal it structurally (after flattening).
    """
    span = w[lo:hi]
    if not 0 <= lo < hi <= len(w) or len(span) % 2 == 0:
        raise SpanNotConjugatePattern(f"span [{lo}:{hi}] cannot read u.t.u^-1")
    m = len(span) // 2
    u, mid, tail = span[:m], span[m], span[m + 1 :]
    if tail != invert(u):
        raise SpanNotConjugatePattern(
            f"span [{lo}:{hi}] tail is not the inverse of its head"
        )
    # Flatten u(v(a)) to (u.v)(a) so the inner curve stays plain.
    new = Letter(make_curve(mid.curve.name, concat(u, mid.curve.conj)), mid.exp)
    if expect is not None and new.curve != expect:
        raise SpanNotConjugatePattern(f"span contracts to {new.curve!r}, not {expect!r}")
    return w[:lo] + (new,) + w[hi:]


def cyclic_shift(w: Word, k: int) -> Word:
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def cyclically_equal(u: Word, v: Word) -> bool:
    """Equality of the underlying cyclic words (structural letters)."""
    if len(u) != len(v):
        return False
    return any(cyclic_shift(u, k) == v for k in range(max(len(u), 1)))


@dataclass(frozen=True)
class PositiveRelator:
    """A word of right-handed twists representing 1; one letter per singular fiber."""

    word: Word
    label: str = ""

    def __post_init__(self) -> None:
        bad = [l for l in self.word if l.exp != 1]
        if bad:
            raise ValueError(f"relator contains inverse letters: {bad[:3]}")

    def __len__(self) -> int:
        return len(self.word)
