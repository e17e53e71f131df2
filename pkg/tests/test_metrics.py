"""Metric behaviour against hand-computed values and brute-force oracles."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codemorph import metrics
from codemorph.errors import EmptyCorpus, EmptyRankList
from oracles import bleu_bruteforce, lcs_bruteforce, meteor_bruteforce, mrr_bruteforce, rouge_l_bruteforce

TOKENS = st.lists(st.sampled_from("a b c d e f".split()), min_size=0, max_size=8)


# ---------------------------------------------------------------- BLEU

def test_bleu_identical_is_one():
    toks = "a b c d".split()
    assert metrics.bleu(toks, toks) == pytest.approx(1.0)


def test_bleu_disjoint_is_zero():
    params = metrics.BleuParams(smoothing=metrics.Smoothing.NONE)
    assert metrics.bleu("a b".split(), "c d".split(), params) == 0.0


def test_bleu_short_candidate_frozen_value():
    # cand "a b c d" vs ref "a b c d e": every n-gram precision is 1,
    # brevity penalty exp(1 - 5/4). Frozen from the brute-force oracle.
    params = metrics.BleuParams(smoothing=metrics.Smoothing.NONE)
    cand, ref = "a b c d".split(), "a b c d e".split()
    expected = bleu_bruteforce(cand, ref, smooth_add_one=False)
    assert expected == pytest.approx(math.exp(-0.25))
    assert metrics.bleu(cand, ref, params) == pytest.approx(expected, abs=1e-12)


def test_bleu_empty_candidate_scores_zero():
    assert metrics.bleu([], "a b".split()) == 0.0


@given(TOKENS, TOKENS)
@settings(max_examples=300)
def test_bleu_matches_bruteforce(cand, ref):
    got = metrics.bleu(cand, ref)
    want = bleu_bruteforce(cand, ref)
    assert got == pytest.approx(want, abs=1e-9)


@given(TOKENS, TOKENS)
def test_bleu_in_unit_interval(cand, ref):
    assert 0.0 <= metrics.bleu(cand, ref) <= 1.0 + 1e-12


# ---------------------------------------------------------------- ROUGE-L

def test_rouge_identical_is_one():
    toks = "a b c".split()
    assert metrics.rouge_l(toks, toks) == pytest.approx(1.0)


def test_rouge_disjoint_is_zero():
    assert metrics.rouge_l("a b".split(), "c d".split()) == 0.0


def test_rouge_frozen_value():
    # cand "a b c", ref "a c", beta 1.2: LCS=2, R=1, P=2/3,
    # F = 2.44*(2/3) / (1 + 1.44*(2/3)) = 0.82993...
    got = metrics.rouge_l("a b c".split(), "a c".split())
    assert got == pytest.approx(0.8299, abs=5e-5)
    assert got == pytest.approx(rouge_l_bruteforce("a b c".split(), "a c".split()), abs=1e-12)


def test_rouge_empty_input_zero():
    assert metrics.rouge_l([], "a".split()) == 0.0
    assert metrics.rouge_l("a".split(), []) == 0.0


@given(TOKENS, TOKENS)
@settings(max_examples=300)
def test_rouge_matches_bruteforce(cand, ref):
    assert metrics.rouge_l(cand, ref) == pytest.approx(rouge_l_bruteforce(cand, ref), abs=1e-9)


@given(TOKENS, TOKENS)
def test_lcs_matches_exponential_enumeration(a, b):
    assert metrics.lcs_length(a, b) == lcs_bruteforce(a, b)


def test_direction_matters_on_unequal_lengths():
    cand, ref = "a b c".split(), "a c".split()
    assert metrics.rouge_l(cand, ref) != pytest.approx(metrics.rouge_l(ref, cand))


# ---------------------------------------------------------------- METEOR

def test_meteor_identical_penalty_only():
    toks = "a b c d".split()
    # one chunk over m=4 matches: score = 1 - 0.5*(1/4)^3
    assert metrics.meteor(toks, toks) == pytest.approx(1.0 - 0.5 * (1 / 4) ** 3)


def test_meteor_disjoint_is_zero():
    assert metrics.meteor("a b".split(), "c d".split()) == 0.0


def test_meteor_single_shared_token_frozen_value():
    # cand "a x", ref "a y": m=1, P=R=1/2, F=0.5, chunks=1, penalty=0.5
    got = metrics.meteor("a x".split(), "a y".split())
    assert got == pytest.approx(0.25)
    assert got == pytest.approx(meteor_bruteforce("a x".split(), "a y".split()), abs=1e-12)


@given(TOKENS, TOKENS)
@settings(max_examples=300)
def test_meteor_matches_bruteforce(cand, ref):
    assert metrics.meteor(cand, ref) == pytest.approx(meteor_bruteforce(cand, ref), abs=1e-9)


# ---------------------------------------------------------------- MRR

def test_mrr_all_first_is_one():
    assert metrics.mrr([1, 1, 1]) == pytest.approx(1.0)


def test_mrr_frozen_value():
    assert metrics.mrr([1, 2, 4]) == pytest.approx(7 / 12)


def test_mrr_empty_raises():
    with pytest.raises(EmptyRankList):
        metrics.mrr([])


@given(st.lists(st.integers(min_value=1, max_value=10), min_size=1, max_size=10))
def test_mrr_matches_bruteforce(ranks):
    assert metrics.mrr(ranks) == pytest.approx(mrr_bruteforce(ranks), abs=1e-12)


@given(st.lists(st.integers(min_value=1, max_value=10), min_size=1, max_size=10))
def test_mrr_permutation_invariant(ranks):
    shuffled = list(ranks)
    random.Random(0).shuffle(shuffled)
    assert metrics.mrr(ranks) == pytest.approx(metrics.mrr(shuffled))


def test_mrr_strictly_decreasing_in_any_rank():
    base = [1, 2, 3]
    for i in range(3):
        worse = list(base)
        worse[i] += 1
        assert metrics.mrr(worse) < metrics.mrr(base)


# ---------------------------------------------------------------- randomized oracle sweep

def test_randomized_oracle_sweep():
    """>=100 random small instances per metric, 1e-9 agreement."""
    rng = random.Random(1234)
    vocab = "a b c d e".split()
    for _ in range(120):
        cand = [rng.choice(vocab) for _ in range(rng.randint(0, 8))]
        ref = [rng.choice(vocab) for _ in range(rng.randint(0, 8))]
        assert metrics.bleu(cand, ref) == pytest.approx(bleu_bruteforce(cand, ref), abs=1e-9)
        assert metrics.rouge_l(cand, ref) == pytest.approx(rouge_l_bruteforce(cand, ref), abs=1e-9)
        assert metrics.meteor(cand, ref) == pytest.approx(meteor_bruteforce(cand, ref), abs=1e-9)
        ranks = [rng.randint(1, 10) for _ in range(rng.randint(1, 10))]
        assert metrics.mrr(ranks) == pytest.approx(mrr_bruteforce(ranks), abs=1e-9)


# ---------------------------------------------------------------- corpus score

def test_corpus_score_single_pair_equals_instance():
    pairs = [("a b".split(), "a b".split())]
    assert metrics.corpus_score(pairs, metrics.bleu) == pytest.approx(1.0)


def test_corpus_score_identical_pairs():
    pairs = [("a b".split(), "a b".split())] * 2
    assert metrics.corpus_score(pairs, metrics.rouge_l) == pytest.approx(1.0)


def test_corpus_score_is_mean():
    scores = iter([0.2, 0.4])

    def fake_metric(cand, ref):
        return next(scores)

    pairs = [([], []), ([], [])]
    assert metrics.corpus_score(pairs, fake_metric) == pytest.approx(0.3)


def test_corpus_score_empty_raises():
    with pytest.raises(EmptyCorpus):
        metrics.corpus_score([], metrics.bleu)


def test_table_renderings():
    assert metrics.render_score(0.117301, "x100") == "11.73"
    assert metrics.render_score(0.72434, "raw4") == "0.7243"
