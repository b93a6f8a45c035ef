"""Ordinal guessing game with hidden numbers.

Player 1 writes n distinct reals; they are revealed in a uniformly random
order and before each reveal Player 2 guesses how many of the visible numbers
exceed the next one (the next entry of the permutation's Lehmer code).  The
softmax strategy wins with probability strictly above 1/n!.
"""
from .adversary import SearchConfig, SearchResult, edge_sweep, minimize_edge
from .errors import CoverGameError
from .estimators import (AdversarySearch, KeyInequality, OrderPreservingStrategy,
                         SoftmaxGuesser, WinProbability)
from .evaluator import (dp_win_prob, inequality_lhs, inequality_lhs_simplex,
                        inverse_recoordinatize, recoordinatize)
from .game import (AdversaryInput, GameTranscript, exact_win_prob_enum, make_input,
                   mc_estimate, play_game)
from .permutations import (LehmerCode, Permutation, enumerate_permutations, lehmer_decode,
                           lehmer_encode, sample_permutation)
from .rulesets import (PlanePair, Ruleset, build_order_map, builtin_ruleset, check_dominance,
                       derive_relation, is_acyclic)
from .strategy import (CategoricalDistribution, increasing_strategy_n2, logistic_strategy_n2,
                       softmax_guess, uniform_guess)

__version__ = "0.1.0"
