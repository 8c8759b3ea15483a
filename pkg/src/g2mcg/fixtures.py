"""Embedded fixture corpus: relators and derivation scripts shipped as
.mcg files in the package's corpus directory.

The corpus carries all the worked derivations: the three lantern
substitution blocks inside (c5 c4 c3 c2 c1)^2, the two rational blowups
turning the Matsumoto + rational fiber sum into the (30,0) factorization,
the four blowdowns Z0 -> Z4, the six blowdowns X0 -> X6, and the seventh
substitution X6 -> X7.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .dsl import Document, parse_document
from .moves import MoveScript
from .registry import Registry, standard_registry
from .words import PositiveRelator

FILES = (
    "relators.mcg",
    "substitutions.mcg",
    "blowups.mcg",
    "z-family.mcg",
    "x-family.mcg",
    "x-seven.mcg",
)

X_LABELS = tuple(f"X{n}" for n in range(8))
Z_LABELS = tuple(f"Z{m}" for m in range(5))


@dataclass
class Corpus:
    relators: dict[str, PositiveRelator] = field(default_factory=dict)
    scripts: dict[str, MoveScript] = field(default_factory=dict)

    def relator(self, label: str) -> PositiveRelator:
        return self.relators[label]


def read_text(name: str) -> str:
    return (
        resources.files("g2mcg").joinpath("corpus").joinpath(name).read_text(encoding="utf-8")
    )


def load_corpus(registry: Optional[Registry] = None) -> Corpus:
    reg = registry if registry is not None else standard_registry()
    corpus = Corpus()
    for name in FILES:
        doc: Document = parse_document(read_text(name), reg)
        for label, rel in doc.relators.items():
            existing = corpus.relators.get(label)
            if existing is not None and existing.word != rel.word:
                raise ValueError(f"conflicting definitions of relator {label}")
            corpus.relators[label] = rel
        for sname, script in doc.scripts.items():
            if sname in corpus.scripts:
                raise ValueError(f"duplicate script {sname}")
            corpus.scripts[sname] = script
    return corpus
