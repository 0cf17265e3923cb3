from fractions import Fraction
from random import Random

import pytest

from ellschub.classes import bs_table
from ellschub.corpus import (
    builtin_chart,
    chart_to_canonical,
    corpus_files,
    corpus_sides,
    cross_substitution_pairs,
    cross_substitution_sides,
    eval_chart_monomial,
    load_corpus,
    parse_entry,
    parse_monomial,
    sl_chart,
    so5_chart,
    sp2_chart,
    worked_sum_values,
    WORKED_SUM_SIGMA,
    WORKED_SUM_WORD,
)
from ellschub.elliptic import eval_monomial, sample_point
from ellschub.weyl import group


def is_zero(v):
    return all(c == 0 for c in v.coeffs)


# --- parsing -----------------------------------------------------------------


def test_parse_monomial_forms():
    assert parse_monomial("mu1^2") == {"mu1": 2}
    assert parse_monomial("z2/z1") == {"z2": 1, "z1": -1}
    assert parse_monomial("1/z2^2") == {"z2": -2}
    assert parse_monomial("1/(z1*z2)") == {"z1": -1, "z2": -1}
    assert parse_monomial("mu1*mu2") == {"mu1": 1, "mu2": 1}
    assert parse_monomial("h") == {"h": 1}
    with pytest.raises(ValueError):
        parse_monomial("mu1+mu2")


def test_parse_entry_forms():
    entry = parse_entry("B2 1,2 - (mu1^2|h)(z2/z1|1/(mu1*mu2))")
    assert entry.group_label == "B2"
    assert entry.omega_word == (1, 2)
    assert entry.sigma_word == ()
    assert entry.sign == 1
    assert len(entry.factors) == 2
    zero = parse_entry("A1 - 1 0")
    assert zero.expects_zero
    signed = parse_entry("A1 1 1 - (z1/z2|h)")
    assert signed.sign == -1


def test_corpus_files_load():
    sizes = {"sl2.txt": 4, "so5.txt": 16, "sp2.txt": 16}
    for name in corpus_files():
        entries = load_corpus(name)
        assert len(entries) == sizes[name]
        for entry in entries:
            assert entry.expects_zero or entry.factors


def test_corpus_zero_pattern_matches_bruhat():
    # the tabulated zeros are exactly the non-Bruhat pairs
    for name in ("so5.txt", "sp2.txt"):
        entries = load_corpus(name)
        W = group(entries[0].group_label)
        for entry in entries:
            omega = W.from_word(entry.omega_word)
            sigma = W.from_word(entry.sigma_word)
            assert entry.expects_zero == (not W.bruhat_leq(sigma, omega))


# --- charts ------------------------------------------------------------------


def test_chart_dictionaries(exact_ctx):
    cv = {"z1": Fraction(2), "z2": Fraction(3), "mu1": Fraction(5),
          "mu2": Fraction(7), "h": Fraction(11)}
    so5 = so5_chart().to_point(cv, exact_ctx)
    assert so5.values == (
        Fraction(3, 2), Fraction(1, 3), Fraction(7, 5), Fraction(1, 49), Fraction(11)
    )
    sp2 = sp2_chart().to_point(cv, exact_ctx)
    assert sp2.values == (
        Fraction(3, 2), Fraction(1, 9), Fraction(7, 5), Fraction(1, 7), Fraction(11)
    )
    sl3 = sl_chart(3).to_point(
        {"z1": Fraction(2), "z2": Fraction(3), "z3": Fraction(5),
         "mu1": Fraction(7), "mu2": Fraction(11), "mu3": Fraction(13),
         "h": Fraction(17)},
        exact_ctx,
    )
    assert sl3.values == (
        Fraction(3, 2), Fraction(5, 3), Fraction(11, 7), Fraction(13, 11), Fraction(17)
    )


def test_builtin_chart_labels():
    assert builtin_chart("B2").name == "so5"
    assert builtin_chart("C2").name == "sp2"
    assert builtin_chart("A1").name == "sl2"
    assert builtin_chart("A3").name == "sl4"
    assert builtin_chart("G2").name == "canonical"


def test_chart_naturality(exact_ctx):
    # evaluating a corpus delta argument in chart coordinates equals
    # evaluating its canonical preimage at the mapped point
    for name in corpus_files():
        for entry in load_corpus(name):
            chart = builtin_chart(entry.group_label)
            cv, point = chart.sample(exact_ctx, Random(f"nat-{name}"))
            for a_exps, b_exps in entry.factors:
                for exps in (a_exps, b_exps):
                    m = chart_to_canonical(chart, exps)
                    assert eval_monomial(point, m) == eval_chart_monomial(exps, cv)


def test_chart_to_canonical_rejects_non_images():
    chart = so5_chart()
    with pytest.raises(ValueError):
        chart_to_canonical(chart, {"mu2": 1})  # mu2 alone needs nu2^(-1/2)


# --- corpus vs engine -----------------------------------------------------------


@pytest.mark.parametrize("name", ["sl2.txt", "so5.txt", "sp2.txt"])
def test_corpus_entries_match_engine(name, exact_ctx):
    for n, entry in enumerate(load_corpus(name)):
        W = group(entry.group_label)
        chart = builtin_chart(entry.group_label)
        cv, point = chart.sample(exact_ctx, Random(f"corpus-{name}-{n}"))
        engine, expected = corpus_sides(entry, W, chart, cv, point)
        assert engine == expected


def test_cross_substitution(exact_ctx):
    pairs = cross_substitution_pairs()
    assert len(pairs) == 16
    for n, (sp2_entry, so5_entry) in enumerate(pairs):
        cv, _ = sp2_chart().sample(exact_ctx, Random(f"cross-{n}"))
        lhs, rhs = cross_substitution_sides(sp2_entry, so5_entry, cv, exact_ctx)
        assert lhs == rhs


def test_worked_sum(exact_ctx):
    W = group("C2")
    sigma = W.from_word(WORKED_SUM_SIGMA)
    cv, point = sp2_chart().sample(exact_ctx, Random("worked"))
    summed, factored = worked_sum_values(cv, exact_ctx)
    assert summed == factored
    engine = bs_table(W, WORKED_SUM_WORD, point).values[sigma]
    assert engine == factored
