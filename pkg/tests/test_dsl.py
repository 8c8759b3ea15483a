import pytest

from g2mcg.dsl import (
    Document,
    ParseError,
    parse_document,
    parse_relator,
    parse_word,
    serialize,
    serialize_word,
)
from g2mcg.fixtures import FILES, load_corpus, read_text
from g2mcg.invariants import FiberSignature, fiber_signature
from g2mcg.moves import Braid, Commute, GlobalConjugate, Hurwitz, Lantern
from g2mcg.registry import UnknownCurve, standard_registry
from g2mcg.words import letter

reg = standard_registry()


def test_parse_rational_relator():
    r = parse_relator("(c1 c2 c3 c4 c5^2 c4 c3 c2 c1)^2", reg)
    assert len(r.word) == 20
    assert fiber_signature(reg, r) == FiberSignature(20, 0)


def test_parse_matsumoto_relator():
    r = parse_relator("(B0 B1 B2 d)^2", reg)
    assert len(r.word) == 8
    assert fiber_signature(reg, r) == FiberSignature(6, 2)


def test_parse_conjugate_letter():
    w = parse_word("[c3^-1](x)", reg)
    assert w == (letter("x", conj=(letter("c3", -1),)),)


def test_separators_dot_and_space():
    assert parse_word("c1 . c2 c3") == parse_word("c1 c2 c3")


def test_unicode_input_ascii_output():
    w = parse_word("δ k̄ h̄ · c1")
    assert serialize_word(w) == "d kb hb c1"


def test_negative_powers_expand():
    assert parse_word("c1^-2") == (letter("c1", -1), letter("c1", -1))
    assert parse_word("(c1 c2)^-1") == (letter("c2", -1), letter("c1", -1))


def test_empty_word():
    assert parse_word("()") == ()
    assert serialize_word(()) == "()"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_word("[c1](")
    with pytest.raises(ParseError):
        parse_word("c1 )")
    with pytest.raises(ParseError):
        parse_relator("c1 c2^-1")
    with pytest.raises(UnknownCurve):
        parse_word("nope", reg)


def test_word_roundtrip_examples():
    for text in [
        "(c1 c2 c3 c4 c5^2 c4 c3 c2 c1)^2",
        "[c5^2 c1^-1 c2^-1](k) c3 d x",
        "c1^3 c5^2",
    ]:
        w = parse_word(text, reg)
        assert parse_word(serialize_word(w), reg) == w


def test_corpus_files_roundtrip():
    for name in FILES:
        doc = parse_document(read_text(name), reg)
        again = parse_document(serialize(doc), reg)
        assert again == doc, name


def test_parse_script_moves():
    text = """
relator R = c1 c3 (c1 c2 c3 c4 c5)^6
script demo
start R
~ commute @0
H @1 left
B @0 rev1
L @2 inst=L1 dir=down out=2
C by=c1^2
checkpoint label=mid: c1 c3
final label=done: c1 c3
end
"""
    doc = parse_document(text, reg)
    script = doc.scripts["demo"]
    moves = [e for e in script.entries if not hasattr(e, "word")]
    assert moves == [
        Commute(0),
        Hurwitz(1, "left"),
        Braid(0, "rev1"),
        Lantern(2, "L1", "down", out=2),
        GlobalConjugate(parse_word("c1^2")),
    ]
    assert script.start_label == "R"


def test_parse_script_keeps_checkpoint_failures_for_replay():
    # a wrong checkpoint is a replay failure, not a parse failure
    text = """
script bad
start: c1 c3
~ commute @0
checkpoint: c1 c3
end
"""
    doc = parse_document(text, reg)
    from g2mcg.moves import replay

    report = replay(reg, doc.scripts["bad"])
    assert not report.ok


def test_script_errors():
    with pytest.raises(ParseError):
        parse_document("script x\nstart: c1\nnonsense\nend")
    with pytest.raises(ParseError):
        parse_document("script x\nstart: c1")
    with pytest.raises(ParseError):
        parse_document("script x\nstart nope\nend")
    with pytest.raises(ParseError):
        parse_document("L @0 inst=L9 dir=down")
    with pytest.raises(ParseError):
        parse_document("script x\nstart: c1\nL @0 inst=L9 dir=down\nend", reg)


def test_serialize_rejects_unknown():
    with pytest.raises(TypeError):
        serialize(42)


def test_document_relators_survive():
    corpus = load_corpus(reg)
    assert corpus.relator("Z0").label == "Z0"
    assert len(corpus.relator("X7").word) == 23
