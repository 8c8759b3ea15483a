"""Enumerate genus-2 fiber-sum splits of a fiber signature under known
obstructions, and classify the summands that survive.

A fiber sum splits the signature additively, and each relatively minimal
summand must itself obey the abelianization law n + 2s = 0 (mod 10).  On
top of that the rule table carries the published obstructions: the pairs
(10,0) and (8,1) never occur as the fiber counts of a genus-2 Lefschetz
fibration over the sphere (Sato, remark 5.1); every such fibration has at
least 7 singular fibers, and none has only reducible fibers
(Ozbagci-Stipsicz).  Classification strength is tracked so a report can
say which summands are pinned up to diffeomorphism and which only up to
homeomorphism.

Splits are unordered; the canonical order puts the smaller reducible count
(then the smaller irreducible count) first.  Trivial summands with no
singular fibers are not enumerated: they would make the sum trivial, not a
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .invariants import FiberSignature, format_homeo


@dataclass(frozen=True)
class ConstraintRule:
    ident: str
    kind: str  # ModTen | ExcludedPair | MinFiberCount | NoAllReducible
    payload: tuple
    citation: str

    def rejects(self, sig: FiberSignature) -> bool:
        if self.kind == "ModTen":
            return sig.mod_ten != 0
        if self.kind == "ExcludedPair":
            return (sig.n, sig.s) == self.payload
        if self.kind == "MinFiberCount":
            return sig.total < self.payload[0]
        if self.kind == "NoAllReducible":
            return sig.n == 0 and sig.s > 0
        raise ValueError(f"unknown rule kind {self.kind}")


RULES: tuple[ConstraintRule, ...] = (
    ConstraintRule("mod10", "ModTen", (), "abelianization of the genus-2 mapping class group is Z/10"),
    ConstraintRule("no-10-0", "ExcludedPair", (10, 0), "Sato, remark 5.1: (10,0) cannot occur"),
    ConstraintRule("no-8-1", "ExcludedPair", (8, 1), "Sato, remark 5.1: (8,1) cannot occur"),
    ConstraintRule("min-fibers", "MinFiberCount", (7,), "Ozbagci-Stipsicz: at least 7 singular fibers"),
    ConstraintRule("no-all-reducible", "NoAllReducible", (), "Ozbagci-Stipsicz: no hyperelliptic fibration with only reducible fibers"),
)


@dataclass(frozen=True)
class ClassificationEntry:
    signature: tuple[int, int]
    strength: str  # Diffeo | Homeo | Impossible
    label: str
    citation: str


CLASSIFICATION: dict[tuple[int, int], ClassificationEntry] = {
    e.signature: e
    for e in (
        ClassificationEntry((6, 2), "Diffeo", "S2xT2 # 4 CP2bar", "Sato, proposition 4.1"),
        ClassificationEntry((4, 3), "Diffeo", "S2xT2 # 3 CP2bar", "Sato, proposition 4.1"),
        ClassificationEntry((20, 0), "Diffeo", format_homeo(1, 13), "characterization of 20 irreducible fibers"),
        ClassificationEntry((18, 1), "Diffeo", format_homeo(1, 12), "characterization of 18 irreducible + 1 reducible"),
        ClassificationEntry((16, 2), "Homeo", format_homeo(1, 11), "rational blowdown of the (18,1) fibration"),
        ClassificationEntry((14, 3), "Homeo", format_homeo(1, 10), "rational blowdown, two lantern substitutions"),
        ClassificationEntry((12, 4), "Homeo", format_homeo(1, 9), "rational blowdown, three lantern substitutions"),
        ClassificationEntry((10, 0), "Impossible", "", "Sato, remark 5.1"),
        ClassificationEntry((8, 1), "Impossible", "", "Sato, remark 5.1"),
    )
}


def classify(sig: FiberSignature) -> Optional[ClassificationEntry]:
    """Table lookup; None for signatures the table does not determine."""
    return CLASSIFICATION.get((sig.n, sig.s))


@dataclass(frozen=True)
class SummandVerdict:
    signature: FiberSignature
    entry: Optional[ClassificationEntry]
    rejected_by: tuple[str, ...]  # rule idents (with citations in the rule table)


@dataclass(frozen=True)
class CandidateSplit:
    first: SummandVerdict
    second: SummandVerdict

    @property
    def admissible(self) -> bool:
        return not self.first.rejected_by and not self.second.rejected_by

    @property
    def signatures(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b = self.first.signature, self.second.signature
        return ((a.n, a.s), (b.n, b.s))


@dataclass
class DecompositionReport:
    signature: FiberSignature
    candidates: list[CandidateSplit] = field(default_factory=list)

    @property
    def admissible(self) -> list[CandidateSplit]:
        return [c for c in self.candidates if c.admissible]

    @property
    def summary(self) -> str:
        k = len(self.admissible)
        if k == 0:
            return "None"
        if k == 1:
            return "Unique"
        return f"Multiple({k})"

    def render(self) -> str:
        sig = self.signature
        lines = [
            f"fiber sum decompositions of (n,s) = ({sig.n},{sig.s})",
            "assuming both summands are relatively minimal genus-2 fibrations",
        ]
        by_s: dict[tuple[int, int], list[CandidateSplit]] = {}
        for c in self.candidates:
            key = (c.first.signature.s, c.second.signature.s)
            by_s.setdefault(key, []).append(c)
        for (s1, s2), group in sorted(by_s.items()):
            lines.append(f"  reducible fibers split {s1}+{s2}:")
            for c in group:
                (n1, _), (n2, _) = c.signatures
                head = f"    ({n1},{s1}) + ({n2},{s2}):"
                if c.admissible:
                    parts = []
                    for v in (c.first, c.second):
                        if v.entry:
                            parts.append(f"{v.entry.strength} {v.entry.label}")
                        else:
                            parts.append("unclassified")
                    lines.append(f"{head} admissible -- {parts[0]} | {parts[1]}")
                else:
                    reasons = []
                    for v in (c.first, c.second):
                        for ident in v.rejected_by:
                            rule = next(r for r in RULES if r.ident == ident)
                            reasons.append(
                                f"({v.signature.n},{v.signature.s}) rejected by {ident}: {rule.citation}"
                            )
                    lines.append(f"{head} rejected -- " + "; ".join(reasons))
        lines.append(f"summary: {self.summary}")
        return "\n".join(lines)

    def records(self) -> str:
        out = []
        for c in self.candidates:
            (n1, s1), (n2, s2) = c.signatures
            verdict = "admissible" if c.admissible else "rejected=" + ",".join(
                c.first.rejected_by + c.second.rejected_by
            )
            out.append(f"split=({n1},{s1})+({n2},{s2}) {verdict}")
        out.append(f"summary={self.summary}")
        return "\n".join(out)


def _verdict(sig: FiberSignature) -> SummandVerdict:
    rejected = tuple(r.ident for r in RULES if r.rejects(sig))
    return SummandVerdict(sig, classify(sig), rejected)


def admissible_splits(sig: FiberSignature) -> DecompositionReport:
    """All unordered nontrivial splits with both sides obeying the mod-10 law.

    The complementary summand of a mod-10 summand of a mod-10 total obeys
    the law automatically; both are still checked.
    """
    report = DecompositionReport(sig)
    seen: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    for s1 in range(sig.s + 1):
        for n1 in range(sig.n + 1):
            a = FiberSignature(n1, s1)
            b = FiberSignature(sig.n - n1, sig.s - s1)
            if a.total == 0 or b.total == 0:
                continue
            if a.mod_ten != 0 or b.mod_ten != 0:
                continue
            if (b.s, b.n) < (a.s, a.n):
                a, b = b, a
            key = ((a.n, a.s), (b.n, b.s))
            if key in seen:
                continue
            seen.add(key)
            report.candidates.append(CandidateSplit(_verdict(a), _verdict(b)))
    report.candidates.sort(
        key=lambda c: (c.first.signature.s, c.first.signature.n)
    )
    return report


def report_corpus(signatures: dict[str, FiberSignature]) -> dict[str, DecompositionReport]:
    return {label: admissible_splits(sig) for label, sig in signatures.items()}
