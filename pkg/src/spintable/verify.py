"""Exhaustive strategy verification against the adaptive adversary.

The verifier tracks, per round, the dense set of configurations that are
still reachable without the player ever having seen all zeros.  A strategy
wins exactly when that set empties.  The hot loop is a gather over
precomputed inverse transition tables; it runs on the compiled kernel when
available and on the NumPy fallback otherwise, with identical results.

Because the identity permutation is always available to the adversary, the
survivor set can shrink by at most one configuration per round; the verifier
uses that to stop early (without a witness) when a losing strategy can no
longer possibly win in its remaining moves.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import CapExceeded
from .game import GameSpec, Strategy, act, decode_config, encode_config
from .linalg import ModVector
from .perm import inverse

DEFAULT_STATE_CAP = 1 << 24
_CHUNK = 1 << 20
_COMP_CACHE_MAX = 128

ORDER_PERMUTE_MOVE = "permute-move"
ORDER_MOVE_PERMUTE = "move-permute"


@dataclass(frozen=True)
class Witness:
    """A start configuration and adversary choices that never reach zero."""

    start: ModVector
    perms: tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    wins: bool
    steps_checked: int
    witness: Optional[Witness] = None


def _digit_codes(lo: int, hi: int, m: int, n: int) -> np.ndarray:
    """Digits of the encoded states lo..hi-1, shape (hi-lo, n)."""
    ts = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, n), dtype=np.int64)
    for i in range(n):
        out[:, i] = (ts // m**i) % m
    return out


def _resolve_backend(backend):
    if backend is None:
        return kernels.default_backend()
    if isinstance(backend, str):
        return kernels.get_backend(backend)
    return backend


class TransitionTables:
    """Inverse transition tables for one game spec's dense state space.

    Permutation tables are built once.  Move tables are rebuilt per distinct
    move from a precomputed digit matrix via tiny per-position lookups (plain
    XOR when m = 2), so strategies full of unique random moves stay cheap.
    Fully composed per-round tables are cached for the bounded move
    vocabularies of synthesized strategies.
    """

    def __init__(self, spec: GameSpec):
        self.spec = spec
        self.m = spec.m
        self.n = spec.n
        self.size = spec.state_count
        self._digits = self._build_digits()
        self._codes = np.arange(self.size, dtype=np.int32) if spec.m == 2 else None
        self._pinv = self._build_perm_tables()
        self._comp_cache: dict[tuple, np.ndarray] = {}

    def _build_digits(self) -> Optional[np.ndarray]:
        if self.m == 2 or self.size * self.n > (1 << 26):
            return None
        digits = np.empty((self.size, self.n), dtype=np.int32)
        for lo in range(0, self.size, _CHUNK):
            hi = min(lo + _CHUNK, self.size)
            digits[lo:hi] = _digit_codes(lo, hi, self.m, self.n)
        return digits

    def _build_perm_tables(self) -> np.ndarray:
        m, n, size = self.m, self.n, self.size
        gens = self.spec.S.perms
        pinv = np.empty((len(gens), size), dtype=np.int32)
        weights = np.array(
            [[m ** inverse(g).mapping[i] for i in range(n)] for g in gens],
            dtype=np.int64,
        )
        for lo in range(0, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            digits = _digit_codes(lo, hi, m, n)
            for gi in range(len(gens)):
                pinv[gi, lo:hi] = digits @ weights[gi]
        return pinv

    def move_table(self, y: ModVector) -> np.ndarray:
        """ainv[t] = encoding of (decode(t) - y): the pre-move state."""
        m, n, size = self.m, self.n, self.size
        if m == 2:
            return self._codes ^ np.int32(encode_config(y))
        if self._digits is not None:
            out = np.zeros(size, dtype=np.int32)
            for i in range(n):
                lut = ((np.arange(m, dtype=np.int64) - y.entries[i]) % m) * m**i
                out += lut.astype(np.int32)[self._digits[:, i]]
            return out
        ainv = np.empty(size, dtype=np.int32)
        powers = np.array([m**i for i in range(n)], dtype=np.int64)
        yarr = np.array(y.entries, dtype=np.int64)
        for lo in range(0, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            digits = _digit_codes(lo, hi, m, n)
            ainv[lo:hi] = ((digits - yarr) % m) @ powers
        return ainv

    def composed_cached(self, y: ModVector, order: str) -> Optional[np.ndarray]:
        """The cached per-round table, or None when the cache will not hold
        it (callers then take the uncomposed kernel path)."""
        key = (y.entries, order)
        cached = self._comp_cache.get(key)
        if cached is not None:
            return cached
        if len(self._comp_cache) >= _COMP_CACHE_MAX:
            return None
        comp = self._compose(y, order)
        self._comp_cache[key] = comp
        return comp

    def _compose(self, y: ModVector, order: str) -> np.ndarray:
        ainv = self.move_table(y)
        if order == ORDER_PERMUTE_MOVE:
            comp = self._pinv[:, ainv]
        elif order == ORDER_MOVE_PERMUTE:
            comp = ainv[self._pinv]
        else:
            raise ValueError(f"unknown round order {order!r}")
        return np.ascontiguousarray(comp, dtype=np.int32)


def _run(fn, args, size: int, pool: Optional[ThreadPoolExecutor], threads: int):
    if pool is None:
        fn(*args, 0, size)
        return
    step = -(-size // threads)
    bounds = [(lo, min(lo + step, size)) for lo in range(0, size, step)]
    futures = [pool.submit(fn, *args, lo, hi) for lo, hi in bounds]
    for f in futures:
        f.result()


def verify_strategy(
    strategy: Strategy,
    want_witness: bool = False,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
    order: str = ORDER_PERMUTE_MOVE,
    threads: int = 1,
    backend=None,
    early_exit: bool = True,
    tables: Optional[TransitionTables] = None,
) -> Verdict:
    """Decide whether a strategy wins against every start and adversary line.

    The survivor set starts as every nonzero configuration (the start is a
    checkpoint) and is advanced one move at a time; the strategy wins iff it
    empties.  With want_witness, a losing run also reconstructs one explicit
    surviving (start, generator choices) line via per-round predecessor
    records.
    """
    spec = strategy.spec
    size = spec.state_count
    if size > state_cap:
        raise CapExceeded(f"state space {size} exceeds cap {state_cap}")
    if want_witness and order != ORDER_PERMUTE_MOVE:
        raise ValueError("witness extraction is only supported in canonical order")
    if want_witness and len(spec.S) > 32767:
        raise ValueError("witness extraction supports at most 32767 generators")
    if tables is None:
        tables = TransitionTables(spec)
    kern = _resolve_backend(backend)

    src = np.ones(size, dtype=np.uint8)
    src[0] = 0
    dst = np.empty_like(src)
    alive = size - 1
    if alive == 0:
        return Verdict(wins=True, steps_checked=0)

    n_moves = len(strategy.moves)
    gens_log: list[np.ndarray] = []
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for k, y in enumerate(strategy.moves, start=1):
            comp = tables.composed_cached(y, order)
            if want_witness:
                if comp is None:
                    comp = tables._compose(y, order)
                gens = np.empty(size, dtype=np.int16)
                _run(kern.step_record, (src, dst, gens, comp), size, pool, threads)
                gens_log.append(gens)
            elif comp is not None:
                _run(kern.step, (src, dst, comp), size, pool, threads)
            elif order == ORDER_PERMUTE_MOVE:
                ainv = tables.move_table(y)
                _run(kern.step_indirect, (src, dst, tables._pinv, ainv), size, pool, threads)
            else:
                _run(kern.step, (src, dst, tables._compose(y, order)), size, pool, threads)
            dst[0] = 0
            alive = int(np.count_nonzero(dst))
            src, dst = dst, src
            if alive == 0:
                return Verdict(wins=True, steps_checked=k)
            if early_exit and not want_witness and alive > n_moves - k:
                # With the identity available, at most one configuration can
                # be eliminated per round, so this strategy cannot recover.
                return Verdict(wins=False, steps_checked=k)
    finally:
        if pool is not None:
            pool.shutdown(wait=False)

    if not want_witness:
        return Verdict(wins=False, steps_checked=n_moves)
    witness = _reconstruct_witness(strategy, src, gens_log)
    return Verdict(wins=False, steps_checked=n_moves, witness=witness)


def _reconstruct_witness(strategy: Strategy, final: np.ndarray, gens_log) -> Witness:
    spec = strategy.spec
    m, n = spec.m, spec.n
    inverses = [inverse(g) for g in spec.S.perms]
    t = int(np.flatnonzero(final)[0])
    perms_rev: list[int] = []
    for k in range(len(strategy.moves) - 1, -1, -1):
        g_idx = int(gens_log[k][t])
        y = strategy.moves[k]
        pre_move = decode_config(t, n, m) - y
        pre_perm = act(inverses[g_idx], pre_move)
        perms_rev.append(g_idx)
        t = encode_config(pre_perm)
    return Witness(start=decode_config(t, n, m), perms=tuple(reversed(perms_rev)))


@dataclass(frozen=True)
class BenchResult:
    backend: str
    wins: bool
    steps: int
    states: int
    generators: int
    seconds: float
    transitions: int
    transitions_per_second: float
    states_per_second: float


def bench_verify(
    strategy: Strategy,
    backend=None,
    threads: int = 1,
    repeat: int = 3,
    state_cap: int = DEFAULT_STATE_CAP,
) -> BenchResult:
    """Time verification end to end; reports best-of-`repeat` throughput."""
    kern = _resolve_backend(backend)
    tables = TransitionTables(strategy.spec)
    best = None
    verdict = None
    for _ in range(max(1, repeat)):
        start = time.perf_counter()
        verdict = verify_strategy(
            strategy,
            state_cap=state_cap,
            threads=threads,
            backend=kern,
            tables=tables,
            early_exit=False,
        )
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    size = strategy.spec.state_count
    gens = len(strategy.spec.S)
    transitions = verdict.steps_checked * size * gens
    return BenchResult(
        backend=kern.NAME,
        wins=verdict.wins,
        steps=verdict.steps_checked,
        states=size,
        generators=gens,
        seconds=best,
        transitions=transitions,
        transitions_per_second=transitions / best if best > 0 else float("inf"),
        states_per_second=verdict.steps_checked * size / best if best > 0 else float("inf"),
    )
