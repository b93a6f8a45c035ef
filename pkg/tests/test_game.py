import math

import numpy as np
import pytest

from covergame.errors import DimensionMismatch, DuplicateValues, NonFiniteInput, NTooLarge, TooFewValues
from covergame.game import (AdversaryInput, exact_win_prob_enum, make_input, mc_estimate, mc_wins,
                            play_game, trial_draws)
from covergame.permutations import Permutation, lehmer_encode
from covergame.strategy import softmax_guess, uniform_strategy
from oracles import WIN_1_0, WIN_1_0_M1, brute_force_win_prob, logistic


def test_make_input():
    assert make_input([0, 1, -1]).values == (1.0, 0.0, -1.0)
    assert make_input([0, 1, -1]).original == (0.0, 1.0, -1.0)
    with pytest.raises(DuplicateValues):
        make_input([3, 3])
    with pytest.raises(TooFewValues):
        make_input([1])
    with pytest.raises(NonFiniteInput):
        make_input([1, math.inf])
    with pytest.raises(ValueError):
        AdversaryInput((0.0, 1.0))


def test_pinned_draw_below_p0_loses_at_stage_one():
    inp = make_input([1, 0])
    tr = play_game(inp, Permutation.identity(2), draws=[0.1])
    (stage,) = tr.stages
    assert stage.guess == 0 and stage.truth == 1
    assert tr.outcome == "loss-at-stage-1" and not tr.won


@pytest.mark.parametrize("sigma", [(1, 2), (2, 1)])
def test_pinned_draws_on_the_true_entries_win(sigma):
    inp = make_input([1, 0])
    sigma = Permutation(sigma)
    truth = lehmer_encode(sigma)[2]
    first = inp.value_of_rank(sigma.inverse()[0])
    probs = softmax_guess([first]).probs
    u = sum(probs[:truth]) + probs[truth] / 2
    assert play_game(inp, sigma, draws=[u]).won


def test_replay_is_deterministic():
    inp = make_input([1, 0, -1])
    sigma = Permutation((2, 3, 1))
    a = play_game(inp, sigma, np.random.default_rng(42))
    b = play_game(inp, sigma, np.random.default_rng(42))
    assert a == b
    assert play_game(inp, sigma, draws=a.draws) == a


def test_transcript_invariants():
    inp = make_input([2.5, -1, 0.3, 4, 1.7])
    rng = np.random.default_rng(3)
    for _ in range(300):
        sigma = Permutation.from_reveal_order(rng.permutation(5) + 1)
        tr = play_game(inp, sigma, rng)
        code = lehmer_encode(sigma).entries
        assert [s.truth for s in tr.stages] == list(code[1:len(tr.stages) + 1])
        assert all(s.correct for s in tr.stages[:-1])
        if tr.won:
            assert len(tr.stages) == 4
        else:
            assert tr.loss_stage == tr.stages[-1].k
        for s in tr.stages:
            assert s.probs == softmax_guess(s.visible).probs


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        play_game(make_input([1, 0]), Permutation.identity(3), draws=[0.5, 0.5])


def test_exact_examples():
    assert exact_win_prob_enum([1, 0]) == pytest.approx(WIN_1_0, abs=1e-15)
    assert round(exact_win_prob_enum([1, 0]), 6) == 0.615529
    assert exact_win_prob_enum([1, 0, -1]) == pytest.approx(WIN_1_0_M1, abs=1e-15)
    assert exact_win_prob_enum([1, 0, -1]) > 1 / 6


@pytest.mark.parametrize("n", range(2, 7))
def test_enumeration_matches_brute_force(n, rng):
    for _ in range(10):
        x = rng.uniform(-5, 5, n)
        assert exact_win_prob_enum(x) == pytest.approx(brute_force_win_prob(list(x)), abs=1e-12)


@pytest.mark.parametrize("n", range(2, 8))
def test_softmax_beats_baseline(n, rng):
    for _ in range(20):
        x = rng.uniform(-5, 5, n)
        assert exact_win_prob_enum(x) - 1 / math.factorial(n) > 1e-12


def test_n2_closed_form(rng):
    for _ in range(100):
        x1, x2 = sorted(rng.uniform(-5, 5, 2), reverse=True)
        expected = 0.5 + (logistic(x1) - logistic(x2)) / 2
        assert abs(exact_win_prob_enum([x1, x2]) - expected) <= 1e-15


@pytest.mark.parametrize("n", range(2, 7))
def test_uniform_baseline_gives_one_over_n_factorial(n, rng):
    x = rng.uniform(-5, 5, n)
    assert abs(exact_win_prob_enum(x, guess=uniform_strategy) - 1 / math.factorial(n)) <= 1e-15


def test_input_order_irrelevant():
    assert exact_win_prob_enum([0, -1, 1]) == exact_win_prob_enum([1, 0, -1])


def test_enum_cap():
    with pytest.raises(NTooLarge):
        exact_win_prob_enum(list(range(11)))


def test_mc_single_trial():
    r = mc_estimate([1, 0], 1, seed=3)
    assert r.estimate in (0.0, 1.0)
    est, wins, stderr = r
    assert wins in (0, 1) and stderr == 0.0


def test_mc_n2_matches_closed_form():
    r = mc_estimate([1, 0], 10 ** 6, seed=7)
    assert abs(r.estimate - WIN_1_0) <= 3 * r.stderr
    assert r.stderr == pytest.approx(math.sqrt(r.estimate * (1 - r.estimate) / 10 ** 6))


def test_mc_n3_matches_enumeration():
    r = mc_estimate([1, 0, -1], 10 ** 6, seed=11)
    assert abs(r.estimate - exact_win_prob_enum([1, 0, -1])) <= 3 * r.stderr


def test_mc_deterministic_and_partition_independent():
    inp = make_input([1.5, 0.2, -0.7, -2.0])
    whole = mc_estimate(inp, 20000, seed=5)
    assert mc_estimate(inp, 20000, seed=5) == whole
    cuts = [0, 1, 4095, 4096, 9000, 12289, 20000]
    shards = sum(mc_wins(inp, 5, a, b) for a, b in zip(cuts, cuts[1:]))
    assert shards == whole.wins


@pytest.mark.parametrize("n", [2, 3, 5])
def test_mc_trials_replay_through_play_game(n, rng):
    inp = make_input(rng.uniform(-3, 3, n))
    seed = 123
    trials = list(range(0, 600)) + list(range(8190, 8200))
    for t in trials:
        ranks, draws = trial_draws(seed, t, n)
        tr = play_game(inp, Permutation.from_reveal_order(ranks), draws=draws)
        assert int(tr.won) == mc_wins(inp, seed, t, t + 1)
