import pytest
from hypothesis import given, strategies as st

from g2mcg.words import (
    NotConjugateForm,
    PositiveRelator,
    SpanNotConjugatePattern,
    concat,
    conjugate,
    contract_subword,
    cyclic_shift,
    cyclically_equal,
    expand_letter,
    free_reduce,
    invert,
    letter,
    make_curve,
)

NAMES = ["c1", "c2", "c3", "c4", "c5", "x", "d"]


def lw(*specs):
    out = []
    for s in specs:
        if s.endswith("'"):
            out.append(letter(s[:-1], -1))
        else:
            out.append(letter(s))
    return tuple(out)


letters_st = st.builds(
    letter,
    st.sampled_from(NAMES),
    st.sampled_from([1, -1]),
)
words_st = st.lists(letters_st, max_size=12).map(tuple)


def test_free_reduce_cancellation():
    assert free_reduce(lw("c1", "c1'")) == ()
    assert free_reduce(lw("c1", "c2", "c2'", "c5")) == lw("c1", "c5")
    assert free_reduce(()) == ()


@given(words_st)
def test_free_reduce_idempotent(w):
    assert free_reduce(free_reduce(w)) == free_reduce(w)


@given(words_st)
def test_invert_involution(w):
    assert invert(invert(w)) == w


@given(words_st)
def test_word_times_inverse_cancels(w):
    assert free_reduce(concat(w, invert(w))) == ()


def test_invert_example():
    assert invert(lw("c1", "c2")) == lw("c2'", "c1'")
    assert invert(()) == ()


def test_conjugate_definition():
    assert conjugate(lw("c2"), lw("c1")) == lw("c1", "c2", "c1'")
    assert conjugate(lw("c2"), ()) == lw("c2")


@given(words_st, words_st)
def test_conjugate_roundtrip(w, a):
    assert conjugate(conjugate(w, a), invert(a)) == free_reduce(w)


def test_expand_letter():
    l = letter("x", 1, conj=lw("c3'"))
    assert expand_letter(l) == lw("c3'", "x", "c3")
    base = letter("c1")
    with pytest.raises(NotConjugateForm):
        expand_letter(base)


def test_expand_contract_roundtrip():
    l = letter("x", -1, conj=lw("c3'", "c2"))
    w = lw("c1") + expand_letter(l) + lw("c5")
    back = contract_subword(w, 1, 1 + 2 * len(l.curve.conj) + 1)
    assert back == lw("c1") + (l,) + lw("c5")


def test_contract_single_letter_span():
    w = lw("c1")
    assert contract_subword(w, 0, 1) == w  # empty conjugator


def test_contract_examples():
    assert contract_subword(lw("c3'", "x", "c3"), 0, 3) == (
        letter("x", 1, conj=lw("c3'")),
    )
    assert contract_subword(lw("c5", "c4", "c5'"), 0, 3) == (
        letter("c4", 1, conj=lw("c5")),
    )


def test_contract_rejects_bad_spans():
    with pytest.raises(SpanNotConjugatePattern):
        contract_subword(lw("c1", "c2"), 0, 2)  # even length
    with pytest.raises(SpanNotConjugatePattern):
        contract_subword(lw("c1", "c2", "c3"), 0, 3)  # tail not inverse of head


def test_contract_flattens_nested_conjugates():
    inner = letter("x", 1, conj=lw("c2"))
    w = lw("c3") + (inner,) + lw("c3'")
    out = contract_subword(w, 0, 3)
    assert out == (letter("x", 1, conj=lw("c3", "c2")),)


def test_positive_relator_rejects_inverses():
    with pytest.raises(ValueError):
        PositiveRelator(lw("c1", "c2'"))


def test_cyclic_equality():
    w = lw("c1", "c2", "c3")
    assert cyclically_equal(w, cyclic_shift(w, 1))
    assert cyclically_equal(w, w)
    assert not cyclically_equal(w, lw("c1", "c3", "c2"))
    assert not cyclically_equal(w, lw("c1", "c2"))


def test_curve_flattening():
    c = make_curve("x", lw("c3"))
    assert not make_curve("x").is_conjugate
    assert c.is_conjugate and c.name == "x"
