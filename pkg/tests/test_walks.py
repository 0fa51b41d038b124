"""Alcove walks: beta data, fold enumeration, signs, and the four classes."""

import pytest
from hypothesis import given, settings, strategies as st

from alcoves.rootdata import CorootVec, build_affine_data
from alcoves.weyl import AffineWeyl
from alcoves.xring import CoeffRF, XPoly, y_action
from alcoves.walks import (
    NEG_CROSS,
    NEG_FOLD,
    POS_CROSS,
    POS_FOLD,
    beta_sequence,
    classify,
    enumerate_walks,
    walk_to_json,
)

A1 = build_affine_data("A", 1)
A2 = build_affine_data("A", 2)
W1 = AffineWeyl(A1)
W2 = AffineWeyl(A2)

words1 = st.lists(st.integers(0, 1), max_size=8)
words2 = st.lists(st.integers(0, 2), max_size=7)


def reduced(W, word):
    return W.length_plus(W.from_word(word)) == len(word)


# -- beta data ---------------------------------------------------------------

def test_beta_values_sl2():
    assert beta_sequence(W1, ()) == []

    [b] = beta_sequence(W1, (1,))
    assert b.beta_vee == CorootVec((1,), 0)
    assert (b.sh, b.ht) == (0, -1)

    [b] = beta_sequence(W1, (0,))
    assert b.beta_vee == CorootVec((-1,), 1)
    assert (b.sh, b.ht) == (1, 1)

    b1, b2 = beta_sequence(W1, (1, 0))
    assert b1.beta_vee == CorootVec((-1,), 2)
    assert (b1.sh, b1.ht) == (2, 1)
    assert b2.beta_vee == CorootVec((-1,), 1)
    assert (b2.sh, b2.ht) == (1, 1)


def test_beta_values_sl3_antidominant_rho_word():
    data = beta_sequence(W2, (1, 2, 1, 0))
    assert [(b.sh, b.ht) for b in data] == [(1, 1), (2, 2), (1, 1), (1, 2)]


def test_beta_satisfies_vacuum_oracle():
    one = XPoly.scalar(2)
    for b in beta_sequence(W2, (1, 2, 1, 0)):
        eig = CoeffRF.q_pow(-b.sh) * CoeffRF.t_pow(-b.ht)
        assert y_action(W2, b.beta_vee, one) == one.scale(eig)


@pytest.mark.parametrize("word", [(1, 1), (0, 0), (1, 2, 1, 2)])
def test_beta_rejects_non_reduced(word):
    W = W1 if max(word) <= 1 else W2
    with pytest.raises(ValueError):
        beta_sequence(W, word)


@given(words2)
@settings(max_examples=60, deadline=None)
def test_beta_coroots_are_positive_with_matching_exponents(word):
    word = tuple(word)
    if not reduced(W2, word):
        return
    for b in beta_sequence(W2, word):
        # positivity of the affine coroot
        assert b.beta_vee.kK > 0 or (
            b.beta_vee.kK == 0 and sum(b.beta_vee.k) > 0
        )
        # sh is the central coordinate; ht is minus the finite height
        assert b.sh == b.beta_vee.kK
        assert b.ht == -sum(b.beta_vee.k)


# -- enumeration -------------------------------------------------------------

@pytest.mark.parametrize("word", [(), (0,), (1, 0), (0, 1, 0)])
def test_walk_count_is_two_to_the_length(word):
    assert len(enumerate_walks(W1, 0, word)) == 2 ** len(word)


def test_empty_word_walks_start_at_omega_rep():
    for c in (0, 1):
        [walk] = enumerate_walks(W1, c, ())
        assert walk.end == W1.omega_rep(c)
        assert walk.is_unfolded
    [walk] = enumerate_walks(W1, 1, ())
    assert walk.wt.omega == (1,)
    assert walk.phi.trans == (0,)
    assert walk.phi.fin == W1.omega_rep(1).fin


def test_walk_zero_is_the_full_crossing():
    word = (1, 2, 1, 0)
    walks = enumerate_walks(W2, 0, word)
    first = walks[0]
    assert first.is_unfolded
    assert all(s.kind in (POS_CROSS, NEG_CROSS) for s in first.steps)
    assert first.end == W2.assemble(0, word)


def test_fold_pattern_matches_bits():
    walks = enumerate_walks(W1, 0, (0, 1))
    assert walks[0].folds == ()
    assert walks[1].folds == (1,)
    assert walks[2].folds == (2,)
    assert walks[3].folds == (1, 2)


def test_step_signs_frozen_sl2():
    # word (0, 1): both crossing steps climb, so folds there point down.
    kinds = [[s.kind for s in w.steps] for w in enumerate_walks(W1, 0, (0, 1))]
    assert kinds[0] == [POS_CROSS, POS_CROSS]
    assert kinds[1] == [NEG_FOLD, NEG_CROSS]   # after the fold we sit at 1
    assert kinds[2] == [POS_CROSS, NEG_FOLD]
    assert kinds[3] == [NEG_FOLD, POS_FOLD]

    # word (1, 0): the descending mirror.
    kinds = [[s.kind for s in w.steps] for w in enumerate_walks(W1, 0, (1, 0))]
    assert kinds[0] == [NEG_CROSS, NEG_CROSS]
    assert kinds[1] == [POS_FOLD, POS_CROSS]
    assert kinds[2] == [NEG_CROSS, POS_FOLD]
    assert kinds[3] == [POS_FOLD, NEG_FOLD]


def test_fold_sets_split_by_sign():
    walks = enumerate_walks(W1, 0, (1, 0))
    assert (walks[1].f_plus, walks[1].f_minus) == ((1,), ())
    assert (walks[3].f_plus, walks[3].f_minus) == ((1,), (2,))


def test_end_decomposes_as_translation_times_direction():
    for word in [(0,), (1, 0), (0, 1), (1, 2, 1, 0)]:
        W = W1 if max(word) <= 1 else W2
        for walk in enumerate_walks(W, 0, word):
            t = W.translation(walk.wt.omega)
            assert W.mul(t, walk.phi) == walk.end


def test_unique_unfolded_walk_reaches_mu():
    # the minimal coset word for mu = -omega_1 lives in the omega-prefix class
    walks = enumerate_walks(W1, 1, (0,))
    unfolded = [w for w in walks if w.is_unfolded]
    assert len(unfolded) == 1
    assert unfolded[0].wt.omega == (-1,)


def test_rejects_non_reduced_and_oversized_words():
    with pytest.raises(ValueError):
        enumerate_walks(W1, 0, (0, 0))
    from alcoves.config import Config

    tiny = AffineWeyl(A1, Config(walk_length_bound=2))
    with pytest.raises(ValueError):
        enumerate_walks(tiny, 0, (0, 1, 0))


@given(words1, st.integers(0, 1))
@settings(max_examples=40, deadline=None)
def test_every_walk_end_decomposes(word, prefix):
    word = tuple(word)
    if len(word) > 6 or not reduced(W1, word):
        return
    for walk in enumerate_walks(W1, prefix, word):
        t = W1.translation(walk.wt.omega)
        assert W1.mul(t, walk.phi) == walk.end
        assert walk.phi.trans == (0,)


# -- classification ----------------------------------------------------------

def test_unfolded_walks_lie_in_all_four_classes():
    # For the word of m_mu, the unfolded walk's direction IS the finite
    # factor, so both semi-infinite identities collapse to 0 = 0.
    for mu_word, cls in [((0,), 0), ((1, 0), 0), ((1, 2, 1, 0), 0)]:
        W = W1 if max(mu_word) <= 1 else W2
        betas = beta_sequence(W, mu_word)
        walks = enumerate_walks(W, cls, mu_word)
        len_m_fin = W.length_plus(walks[0].phi)
        flags = classify(W, walks[0], betas, len_m_fin)
        assert flags.pos_folded and flags.neg_folded
        assert flags.pos_semi_infinite and flags.neg_semi_infinite


def test_classification_table_for_minus_two_omega():
    # m word (1, 0), a translation: the finite factor is trivial.
    betas = beta_sequence(W1, (1, 0))
    walks = enumerate_walks(W1, 0, (1, 0))
    flags = [classify(W1, w, betas, 0) for w in walks]
    # every pattern survives both limits here; only the fold flags separate
    assert [f.pos_folded for f in flags] == [True, True, True, False]
    assert [f.neg_folded for f in flags] == [True, False, False, False]
    assert all(f.pos_semi_infinite for f in flags)
    assert all(f.neg_semi_infinite for f in flags)


def test_semi_infinite_survivor_counts_for_sl3_antidominant_rho():
    word = (1, 2, 1, 0)
    betas = beta_sequence(W2, word)
    walks = enumerate_walks(W2, 0, word)
    flags = [classify(W2, w, betas, 0) for w in walks]
    assert len(walks) == 16
    assert sum(f.neg_semi_infinite for f in flags) == 9
    assert sum(f.pos_semi_infinite for f in flags) == 9


# -- serialization -----------------------------------------------------------

def test_walk_json_shape():
    walk = enumerate_walks(W1, 0, (1, 0))[3]
    js = walk_to_json(walk)
    assert js == {
        "word": [1, 0],
        "omega_prefix": 0,
        "steps": [{"i": 1, "kind": POS_FOLD}, {"i": 0, "kind": NEG_FOLD}],
        "wt": [0],
        "f_plus": [1],
        "f_minus": [2],
    }
