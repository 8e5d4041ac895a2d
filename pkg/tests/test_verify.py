import random

import pytest

from conftest import rot_spec
from oracles import game_tree_wins
from spintable import (
    BeliefState,
    CapExceeded,
    GameSpec,
    Strategy,
    belief_step,
    generator_set,
    mod_vector,
    simulate_trace,
    synth,
    verify_strategy,
)
from spintable.verify import ORDER_MOVE_PERMUTE, ORDER_PERMUTE_MOVE


def random_strategy(spec: GameSpec, length: int, rng: random.Random) -> Strategy:
    moves = tuple(
        mod_vector(spec.m, [rng.randrange(spec.m) for _ in range(spec.n)])
        for _ in range(length)
    )
    return Strategy(spec, moves)


ORACLE_SPECS = [
    rot_spec(2, 2),
    rot_spec(4, 2),
    rot_spec(2, 4),
    rot_spec(3, 3),
    rot_spec(2, 3),
    rot_spec(6, 2),
    GameSpec(4, 2, generator_set(4, [[0, 1, 2, 3], [1, 0, 2, 3]])),
    GameSpec(4, 2, generator_set(4, [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])),
    GameSpec(3, 2, generator_set(3, [[0, 1, 2]])),
]


def test_golden_strategy_wins(backend):
    strategy = synth(rot_spec(4, 2))
    verdict = verify_strategy(strategy, backend=backend)
    assert verdict.wins
    assert verdict.steps_checked == 15


def test_empty_strategy_wins_for_unit_modulus(backend):
    spec = rot_spec(3, 1)
    verdict = verify_strategy(Strategy(spec, ()), backend=backend)
    assert verdict.wins
    assert verdict.steps_checked == 0


def test_single_move_loses_with_witness(backend):
    spec = rot_spec(2, 2)
    strategy = Strategy(spec, (mod_vector(2, [1, 1]),))
    verdict = verify_strategy(strategy, want_witness=True, backend=backend)
    assert not verdict.wins
    assert verdict.witness is not None
    assert verdict.witness.start.entries == (0, 1)
    replay = simulate_trace(spec, verdict.witness.start, strategy.moves, verdict.witness.perms)
    assert not replay.won


def test_state_cap():
    spec = rot_spec(4, 2)
    with pytest.raises(CapExceeded):
        verify_strategy(Strategy(spec, ()), state_cap=8)


@pytest.mark.parametrize("spec", ORACLE_SPECS, ids=lambda s: f"n{s.n}m{s.m}g{len(s.S)}")
def test_verifier_matches_game_tree_oracle(spec):
    rng = random.Random(20_000 + spec.n * 100 + spec.m)
    gens = [g.mapping for g in spec.S.perms]
    for _ in range(25):
        strategy = random_strategy(spec, rng.randrange(0, 13), rng)
        expected = game_tree_wins(spec.n, spec.m, gens, [y.entries for y in strategy.moves])
        got = verify_strategy(strategy)
        assert got.wins == expected
        alt = verify_strategy(strategy, order=ORDER_MOVE_PERMUTE)
        assert alt.wins == expected


def test_turn_order_equivalence_on_random_instances():
    rng = random.Random(99)
    for spec in ORACLE_SPECS:
        for _ in range(15):
            strategy = random_strategy(spec, rng.randrange(0, 18), rng)
            a = verify_strategy(strategy, order=ORDER_PERMUTE_MOVE).wins
            b = verify_strategy(strategy, order=ORDER_MOVE_PERMUTE).wins
            assert a == b


def test_backends_agree(backend):
    rng = random.Random(5)
    spec = rot_spec(4, 2)
    for _ in range(10):
        strategy = random_strategy(spec, rng.randrange(0, 40), rng)
        base = verify_strategy(strategy, early_exit=False)
        got = verify_strategy(strategy, backend=backend, early_exit=False)
        assert got == base


def test_thread_count_does_not_change_result():
    rng = random.Random(11)
    spec = rot_spec(4, 2)
    for _ in range(5):
        strategy = random_strategy(spec, 20, rng)
        ref = verify_strategy(strategy, want_witness=True, threads=1)
        for threads in (2, 4):
            assert verify_strategy(strategy, want_witness=True, threads=threads) == ref


def test_thread_count_stable_on_uncached_move_path(backend):
    # More than 128 distinct moves forces the on-the-fly table path; the
    # verdict must not depend on how the state space is partitioned.
    rng = random.Random(19)
    spec = rot_spec(12, 2)
    strategy = random_strategy(spec, 300, rng)
    ref = verify_strategy(strategy, backend=backend, threads=1, early_exit=False)
    got = verify_strategy(strategy, backend=backend, threads=3, early_exit=False)
    assert got == ref


def test_early_exit_matches_full_run():
    rng = random.Random(13)
    spec = rot_spec(3, 3)
    for _ in range(10):
        strategy = random_strategy(spec, rng.randrange(0, 60), rng)
        fast = verify_strategy(strategy, early_exit=True)
        full = verify_strategy(strategy, early_exit=False)
        assert fast.wins == full.wins


def test_witness_requires_canonical_order():
    spec = rot_spec(2, 2)
    with pytest.raises(ValueError):
        verify_strategy(Strategy(spec, ()), want_witness=True, order=ORDER_MOVE_PERMUTE)


def test_witnesses_replay_to_zero_free_traces():
    rng = random.Random(17)
    for spec in [rot_spec(2, 3), rot_spec(3, 2), rot_spec(2, 6)]:
        for _ in range(5):
            strategy = random_strategy(spec, 2 * spec.state_count, rng)
            verdict = verify_strategy(strategy, want_witness=True)
            assert not verdict.wins
            replay = simulate_trace(
                spec, verdict.witness.start, strategy.moves, verdict.witness.perms
            )
            assert not replay.won
            assert all(not c.is_zero() for c in replay.configs)


def test_dense_survivors_match_sparse_belief_steps(backend):
    # Drive the spec-level belief-step operation alongside the dense kernel
    # and require identical survivor sets after every round.
    import numpy as np

    from spintable import kernels
    from spintable.verify import TransitionTables

    rng = random.Random(23)
    for spec in [rot_spec(3, 2), rot_spec(2, 4), ORACLE_SPECS[6]]:
        strategy = random_strategy(spec, 8, rng)
        tables = TransitionTables(spec)
        kern = kernels.get_backend(backend)
        size = spec.state_count
        src = np.ones(size, dtype=np.uint8)
        src[0] = 0
        B = BeliefState.full(spec.n, spec.m)
        for i, y in enumerate(strategy.moves):
            B = belief_step(B, y, spec.S)
            dst = np.empty_like(src)
            if i % 2 == 0:
                kern.step(src, dst, tables._compose(y, ORDER_PERMUTE_MOVE), 0, size)
            else:
                kern.step_indirect(src, dst, tables._pinv, tables.move_table(y), 0, size)
            dst[0] = 0
            src = dst
            assert set(np.flatnonzero(src).tolist()) == set(B.codes)
