"""Numerical invariants of the 4-manifolds carried by positive relators.

A positive relator with n nonseparating and s separating letters encodes a
genus-2 Lefschetz fibration over the sphere with n irreducible and s
reducible singular fibers.  The Euler characteristic is e = n + s - 4 (each
singular fiber adds one to the product e(S^2) e(Sigma_2) = -4) and the
signature is sigma = -(3n + s)/5 by the genus-2 local signature formula;
the division is exact for any signature obeying the mod-10 law n + 2s = 0,
and non-divisibility is reported as an error, never rounded.

Derived quantities: c1^2 = 3 sigma + 2e, chi_h = (sigma + e)/4, and, only
when the caller asserts simple connectivity, b2+ = (e + sigma - 2)/2 and
b2- = (e - sigma - 2)/2 with the homeomorphism-type label
"p CP2 # q CP2bar" for the (then odd, indefinite) intersection form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .registry import Registry
from .words import Letter, PositiveRelator, Word, make_curve


class SignatureNotIntegral(ValueError):
    pass


class NotOddForm(ValueError):
    """Homeomorphism labels need asserted simple connectivity and non-spin."""


class InsufficientData(ValueError):
    pass


@dataclass(frozen=True)
class FiberSignature:
    n: int
    s: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.s < 0:
            raise ValueError("fiber counts must be nonnegative")

    def __add__(self, other: "FiberSignature") -> "FiberSignature":
        return FiberSignature(self.n + other.n, self.s + other.s)

    @property
    def total(self) -> int:
        return self.n + self.s

    @property
    def mod_ten(self) -> int:
        return (self.n + 2 * self.s) % 10


@dataclass(frozen=True)
class InvariantSet:
    e: int
    sigma: int
    c1sq: int
    chi_h: int
    b2plus: Optional[int] = None
    b2minus: Optional[int] = None
    label: Optional[str] = None


@dataclass(frozen=True)
class BlowdownDelta:
    e: int
    sigma: int
    c1sq: int
    chi_h: int
    b2plus: int


def fiber_signature(reg: Registry, r: PositiveRelator | Word) -> FiberSignature:
    w = r.word if isinstance(r, PositiveRelator) else r
    s = sum(1 for l in w if reg.separating(l.curve))
    return FiberSignature(len(w) - s, s)


def invariants(sig: FiberSignature, simply_connected: bool = False) -> InvariantSet:
    n, s = sig.n, sig.s
    if (3 * n + s) % 5 != 0:
        raise SignatureNotIntegral(f"3n+s = {3*n+s} is not divisible by 5 for (n,s)=({n},{s})")
    e = n + s - 4
    sigma = -(3 * n + s) // 5
    c1sq = 3 * sigma + 2 * e
    if (sigma + e) % 4 != 0:
        raise SignatureNotIntegral(f"sigma+e = {sigma+e} is not divisible by 4")
    chi_h = (sigma + e) // 4
    b2p = b2m = None
    label = None
    if simply_connected:
        # 2 - 2 b1 + 2 b2+ = e + sigma with b1 = 0.
        if (e + sigma - 2) % 2 or (e - sigma - 2) % 2:
            raise SignatureNotIntegral("betti numbers are not integral")
        b2p = (e + sigma - 2) // 2
        b2m = (e - sigma - 2) // 2
    return InvariantSet(e, sigma, c1sq, chi_h, b2p, b2m, label)


def blowdown_delta(p: int) -> BlowdownDelta:
    """Invariant shift of one rational blowdown along the length-(p-1) chain.

    The excised plumbing is negative definite with p-1 second-homology
    classes, so b2+ is kept while sigma and c1^2 each gain p-1.
    """
    if p < 2:
        raise ValueError("blowdown needs p >= 2")
    return BlowdownDelta(e=-(p - 1), sigma=p - 1, c1sq=p - 1, chi_h=0, b2plus=0)


def fiber_sum(
    r1: PositiveRelator, r2: PositiveRelator, twist: Word = ()
) -> PositiveRelator:
    """Concatenate monodromies; a nonempty twist conjugates every letter of r2.

    Signatures add, and e(sum) = e(1) + e(2) + 4 since the two discarded
    fiber neighborhoods each carried e = -2.
    """
    if twist:
        tail = tuple(
            Letter(make_curve(l.curve.name, twist + l.curve.conj), l.exp)
            for l in r2.word
        )
    else:
        tail = r2.word
    label = f"{r1.label}+{r2.label}" if r1.label and r2.label else ""
    return PositiveRelator(r1.word + tail, label)


def homeo_label(
    inv: InvariantSet, simply_connected: bool, non_spin: bool
) -> str:
    """Label p CP2 # q CP2bar; valid only under the asserted hypotheses.

    The tool never proves simple connectivity or non-spin-ness; the caller
    asserts them.  (A reducible fiber forces non-spin, see
    non_spin_from_signature.)
    """
    if not simply_connected or not non_spin:
        raise NotOddForm("label requires asserted simple connectivity and non-spin")
    p2 = inv.e + inv.sigma - 2
    q2 = inv.e - inv.sigma - 2
    if p2 % 2 or q2 % 2 or p2 < 0 or q2 < 0:
        raise NotOddForm(f"(e,sigma)=({inv.e},{inv.sigma}) admits no odd form label")
    return format_homeo(p2 // 2, q2 // 2)


def format_homeo(p: int, q: int) -> str:
    return f"{p} CP2 # {q} CP2bar"


def non_spin_from_signature(sig: FiberSignature) -> bool:
    """A reducible singular fiber forces a non-spin total space."""
    return sig.s >= 1


def kodaira_label(c1sq: int, minimal: bool, k_omega_sign: int) -> str:
    """Symplectic Kodaira dimension from minimal-model data.

    ``c1sq`` is c1^2 of the minimal model, ``k_omega_sign`` the sign of
    K.omega; both come from the caller, they are not computable here.
    """
    if not minimal:
        raise InsufficientData("Kodaira dimension needs the minimal model")
    if c1sq < 0 or k_omega_sign < 0:
        return "-inf"
    if k_omega_sign == 0 and c1sq == 0:
        return "0"
    if k_omega_sign > 0 and c1sq == 0:
        return "1"
    if k_omega_sign > 0 and c1sq > 0:
        return "2"
    raise InsufficientData(
        f"no Kodaira class for K.omega sign {k_omega_sign} with c1^2 = {c1sq}"
    )


# -- reports -------------------------------------------------------------------


def invariant_records(sig: FiberSignature, inv: InvariantSet) -> str:
    parts = [f"n={sig.n}", f"s={sig.s}", f"e={inv.e}", f"sigma={inv.sigma}",
             f"c1sq={inv.c1sq}", f"chi_h={inv.chi_h}"]
    if inv.b2plus is not None:
        parts += [f"b2plus={inv.b2plus}", f"b2minus={inv.b2minus}"]
    if inv.label:
        parts.append(f"label={inv.label}")
    return " ".join(parts)


def invariant_table(rows: list[tuple[str, FiberSignature, InvariantSet]]) -> str:
    header = ("name", "n", "s", "e", "sigma", "c1^2", "chi_h")
    data = [header] + [
        (name, str(sig.n), str(sig.s), str(inv.e), str(inv.sigma),
         str(inv.c1sq), str(inv.chi_h))
        for name, sig, inv in rows
    ]
    widths = [max(len(r[i]) for r in data) for i in range(len(header))]
    lines = []
    for i, row in enumerate(data):
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)
