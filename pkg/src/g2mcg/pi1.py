"""Action of twist words on the genus-2 surface group: a stronger oracle
than homology, able to separate words with equal symplectic image.

The surface group is <a, b, c, d | a b a^-1 b^-1 c d c^-1 d^-1> with
(a, b) the meridian/longitude pair of the first handle and (c, d) of the
second; elements are strings, uppercase meaning inverse.  Words in this
group are compared through Dehn's algorithm: the relator has piece length
one, so replacing any subword longer than half of a cyclic rotation of the
relator by the complementary shorter piece, iterated with free reduction,
shrinks every trivial word to the empty string.

The twist action table was reconstructed from the planar two-handle
picture: each chain twist inserts the based twist-curve word into the
generators crossing it once, and the middle chain curve, whose based
representative is b a^-1 b^-1 c, additionally conjugates the second
meridian because every arc from the basepoint to it crosses the twist
annulus.  The table is accepted because the whole genus-2 presentation
holds for it exactly: braid relations for adjacent twists, commutation
for distant ones, the involution word squaring to the identity, the
30-twist chain relator acting as the identity, and every abelianized
action equal to the homology transvection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import homology as hom
from .homology import Mat
from .registry import Registry
from .words import Curve, Letter, Word

GENS = "abcd"
RELATOR = "abABcdCD"


class MissingAutomorphism(KeyError):
    """A letter's curve has no registered surface-group action."""


def inverse(w: str) -> str:
    return w[::-1].swapcase()


def free_reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


_ROTATIONS: frozenset[str] = frozenset(
    rot
    for r in range(len(RELATOR))
    for rot in (RELATOR[r:] + RELATOR[:r], inverse(RELATOR[r:] + RELATOR[:r]))
)


def dehn_reduce(w: str) -> str:
    """Shortest representative reachable by free reduction plus replacing
    any subword longer than half a relator rotation by the complement."""
    w = free_reduce(w)
    changed = True
    while changed:
        changed = False
        for length in range(7, 4, -1):
            hit = False
            for i in range(len(w) - length + 1):
                seg = w[i : i + length]
                for rho in _ROTATIONS:
                    if rho.startswith(seg):
                        w = free_reduce(w[:i] + inverse(rho[length:]) + w[i + length :])
                        changed = hit = True
                        break
                if hit:
                    break
            if hit:
                break
    return w


def is_trivial(w: str) -> bool:
    return dehn_reduce(w) == ""


def elements_equal(u: str, v: str) -> bool:
    return is_trivial(u + inverse(v))


# -- cyclic words and conjugacy ---------------------------------------------------


def _cyclic_reduce(w: str) -> tuple[str, str]:
    """(cyclic form, conjugator p) with w = p . cyc . p^-1."""
    w = dehn_reduce(w)
    p = ""
    while len(w) >= 2 and w[0] == w[-1].swapcase():
        p += w[0]
        w = dehn_reduce(w[1:-1])
    return w, p


def _half_relator_variants(w: str) -> set[str]:
    # Subwords of length exactly half the relator admit an equal-length
    # replacement; the closure of these catches the geodesic ambiguity.
    out = set()
    for i in range(len(w) - 3):
        seg = w[i : i + 4]
        for rho in _ROTATIONS:
            if rho.startswith(seg):
                cand = free_reduce(w[:i] + inverse(rho[4:]) + w[i + 4 :])
                if len(cand) == len(w):
                    out.add(cand)
    return out


def cyclic_forms(w: str, cap: int = 4096) -> frozenset[str]:
    """All cyclically reduced rotations of w, closed under half-relator
    rewrites; two elements are conjugate iff their form sets intersect."""
    cyc, _ = _cyclic_reduce(w)
    seen: set[str] = set()
    frontier = {cyc}
    while frontier and len(seen) < cap:
        nxt: set[str] = set()
        for u in frontier:
            for r in range(max(len(u), 1)):
                rot = dehn_reduce(u[r:] + u[:r])
                rot, _ = _cyclic_reduce(rot)
                if rot not in seen:
                    seen.add(rot)
                    nxt.add(rot)
                for v in _half_relator_variants(u[r:] + u[:r]):
                    v, _ = _cyclic_reduce(dehn_reduce(v))
                    if v not in seen:
                        seen.add(v)
                        nxt.add(v)
        frontier = nxt
    return frozenset(seen)


def conjugate_elements(u: str, v: str) -> bool:
    return bool(cyclic_forms(u) & cyclic_forms(v))


# -- twist automorphisms -----------------------------------------------------------

Aut = dict[str, str]

_IDENTITY: Aut = {g: g for g in GENS}

# Based twist-curve word of the middle chain curve.
_GAMMA = "bABc"

TWIST_TABLE: dict[str, Aut] = {
    "c1": {**_IDENTITY, "b": "bA"},
    "c2": {**_IDENTITY, "a": "ab"},
    "c3": {
        **_IDENTITY,
        "b": free_reduce(_GAMMA + "b"),
        "c": free_reduce(_GAMMA + "c" + inverse(_GAMMA)),
        "d": free_reduce("d" + inverse(_GAMMA)),
    },
    "c4": {**_IDENTITY, "c": "cd"},
    "c5": {**_IDENTITY, "d": "dC"},
}

# The left-handed twists insert the reversed curve.
TWIST_TABLE_INV: dict[str, Aut] = {
    "c1": {**_IDENTITY, "b": "ba"},
    "c2": {**_IDENTITY, "a": "aB"},
    "c3": {
        **_IDENTITY,
        "b": free_reduce(inverse(_GAMMA) + "b"),
        "c": free_reduce(inverse(_GAMMA) + "c" + _GAMMA),
        "d": free_reduce("d" + _GAMMA),
    },
    "c4": {**_IDENTITY, "c": "cD"},
    "c5": {**_IDENTITY, "d": "dc"},
}


def apply_aut(aut: Aut, w: str) -> str:
    out = []
    for ch in w:
        out.append(aut[ch] if ch.islower() else inverse(aut[ch.lower()]))
    return dehn_reduce("".join(out))


def compose(outer: Aut, inner: Aut) -> Aut:
    """(outer . inner)(x) = outer(inner(x))."""
    return {g: apply_aut(outer, inner[g]) for g in GENS}


def conjugation_by(z: str) -> Aut:
    return {g: dehn_reduce(z + g + inverse(z)) for g in GENS}


def preserves_relator(aut: Aut) -> bool:
    return is_trivial(apply_aut(aut, RELATOR))


def word_action(reg: Registry, w: Word) -> Aut:
    """Automorphism of the word: rightmost letter acts first, matching the
    matrix convention image(uv) = image(u) image(v) on column vectors."""
    out = dict(_IDENTITY)
    for l in w:
        out = compose(out, _letter_action(reg, l))
    return out


def _letter_action(reg: Registry, l: Letter) -> Aut:
    name = l.curve.name
    if l.curve.conj:
        inner = _letter_action(reg, Letter(Curve(name), l.exp))
        u = word_action(reg, l.curve.conj)
        uinv = word_action(reg, tuple(m.inverse() for m in reversed(l.curve.conj)))
        return compose(u, compose(inner, uinv))
    table = TWIST_TABLE if l.exp == 1 else TWIST_TABLE_INV
    if name not in table:
        raise MissingAutomorphism(name)
    return dict(table[name])


def apply_word(reg: Registry, w: Word, g: str) -> str:
    return apply_aut(word_action(reg, w), dehn_reduce(g))


def ab_vector(w: str) -> tuple[int, int, int, int]:
    v = [0, 0, 0, 0]
    for ch in w:
        v[GENS.index(ch.lower())] += 1 if ch.islower() else -1
    return tuple(v)  # type: ignore[return-value]


def ab_matrix(aut: Aut) -> Mat:
    cols = [ab_vector(aut[g]) for g in GENS]
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))  # type: ignore[return-value]


# -- comparison up to inner automorphisms --------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # "equal" | "distinguished" | "inconclusive"
    conjugator: Optional[str] = None

    @property
    def equal(self) -> bool:
        return self.status == "equal"


def _auts_equal(a1: Aut, a2: Aut) -> bool:
    return all(elements_equal(a1[g], a2[g]) for g in GENS)


def _check_conjugator(z: str, phi: Aut, psi: Aut) -> bool:
    return all(elements_equal(dehn_reduce(z + psi[g] + inverse(z)), phi[g]) for g in GENS)


def equal_up_to_inner(
    reg: Registry, u: Word, v: Word, bound: int = 12
) -> Verdict:
    """Do u and v induce the same outer automorphism?

    Distinguished when the abelianized actions already differ.  Equal with
    a witness when a single conjugator works for all four generators; the
    witness search enumerates short reduced candidates and conjugators
    extracted from cyclic-form matching up to the length bound, and gives
    up honestly (Inconclusive) beyond that.
    """
    phi = word_action(reg, u)
    psi = word_action(reg, v)
    if ab_matrix(phi) != ab_matrix(psi):
        return Verdict("distinguished")
    if _auts_equal(phi, psi):
        return Verdict("equal", "")

    letters = "abcdABCD"
    frontier = [""]
    for _ in range(min(bound, 4)):
        frontier = [
            z + ch
            for z in frontier
            for ch in letters
            if not (z and z[-1] == ch.swapcase())
        ]
        for z in frontier:
            if _check_conjugator(z, phi, psi):
                return Verdict("equal", z)

    x0 = next(g for g in GENS if not elements_equal(phi[g], psi[g]))
    c_phi, p_phi = _cyclic_reduce(phi[x0])
    c_psi, p_psi = _cyclic_reduce(psi[x0])
    if len(c_phi) == len(c_psi):
        for r in range(max(len(c_psi), 1)):
            if c_psi[r:] + c_psi[:r] != c_phi:
                continue
            z0 = dehn_reduce(p_phi + inverse(c_psi[:r]) + inverse(p_psi))
            for k in range(-2, 3):
                z = dehn_reduce(z0 + (psi[x0] * abs(k) if k >= 0 else inverse(psi[x0]) * abs(k)))
                if len(z) <= bound and _check_conjugator(z, phi, psi):
                    return Verdict("equal", z)
    return Verdict("inconclusive")
