"""Game semantics: configurations, moves, and exact belief tracking.

A round is canonically "permute, then add the move, then check for zero",
and the start configuration is itself a checkpoint.  The alternative order
(move first, permute after) is supported by the verifier for cross-checks;
the two agree on which strategies win.

Configurations are vectors in Z_m^n.  For set-valued work they are encoded
as base-m integers with position 0 least significant, so the all-zero
(winning) configuration is always code 0.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .linalg import ModVector, ZpBasis, solve_in_span, zero_vector
from .perm import GeneratorSet, Permutation


@dataclass(frozen=True)
class GameSpec:
    """Parameters of one game: n positions, counters mod m, adversary set S."""

    n: int
    m: int
    S: GeneratorSet

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one position")
        if self.m < 1:
            raise ValueError("modulus must be >= 1")
        if self.S.n != self.n:
            raise ValueError("generator set acts on the wrong number of positions")
        if not self.S.contains_identity():
            raise ValueError(
                "generator set must contain the identity; see normalize_generators"
            )

    @property
    def state_count(self) -> int:
        return self.m**self.n


@dataclass(frozen=True)
class Strategy:
    """An oblivious move sequence committed in advance.

    metadata carries how a synthesized strategy was built (construction
    name, prime-power split, basis); it never affects equality.
    """

    spec: GameSpec
    moves: tuple[ModVector, ...]
    metadata: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for y in self.moves:
            if y.m != self.spec.m or y.n != self.spec.n:
                raise ValueError("every move must be a length-n vector mod m")

    def __len__(self):
        return len(self.moves)


def encode_config(x: ModVector) -> int:
    code = 0
    for e in reversed(x.entries):
        code = code * x.m + e
    return code


def decode_config(code: int, n: int, m: int) -> ModVector:
    entries = []
    for _ in range(n):
        entries.append(code % m)
        code //= m
    return ModVector(m, tuple(entries))


def act(g: Permutation, x: ModVector) -> ModVector:
    """Permute coordinates: the entry at position i moves to position g(i)."""
    if g.n != x.n:
        raise ValueError("permutation and vector size mismatch")
    out = [0] * x.n
    for i, e in enumerate(x.entries):
        out[g.mapping[i]] = e
    return ModVector(x.m, tuple(out))


@dataclass(frozen=True)
class BeliefState:
    """Configurations still consistent with "the player has not won yet".

    Stored as encoded integers; the zero configuration is stripped on
    construction because reaching it means that branch already won.
    """

    n: int
    m: int
    codes: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "codes", frozenset(self.codes) - {0})

    @classmethod
    def from_configs(cls, n: int, m: int, configs: Iterable[ModVector]) -> "BeliefState":
        return cls(n, m, frozenset(encode_config(x) for x in configs))

    @classmethod
    def full(cls, n: int, m: int) -> "BeliefState":
        """Every configuration except the already-won zero."""
        return cls(n, m, frozenset(range(m**n)))

    def configs(self) -> list[ModVector]:
        return [decode_config(c, self.n, self.m) for c in sorted(self.codes)]

    def __len__(self):
        return len(self.codes)


def belief_step(B: BeliefState, y: ModVector, S: GeneratorSet) -> BeliefState:
    """One round of exact belief tracking: permute by every g in S, add y,
    drop the zero configuration."""
    if y.n != B.n or y.m != B.m:
        raise ValueError("move does not match the belief state's dimensions")
    if S.n != B.n:
        raise ValueError("generator set does not match the belief state")
    out: set[int] = set()
    for code in B.codes:
        x = decode_config(code, B.n, B.m)
        for g in S.perms:
            out.add(encode_config(act(g, x) + y))
    return BeliefState(B.n, B.m, frozenset(out))


@dataclass(frozen=True)
class TraceResult:
    """One concrete adversary line, fully replayed."""

    configs: tuple[ModVector, ...]
    won: bool


def simulate_trace(
    spec: GameSpec,
    start: ModVector,
    moves: Iterable[ModVector],
    perm_choices: Iterable[int],
) -> TraceResult:
    """Replay one adversary line in canonical order and record every state.

    perm_choices are indices into spec.S, one per move.  The won flag is true
    if the zero configuration appears anywhere, including at the start.
    """
    moves = list(moves)
    choices = list(perm_choices)
    if len(moves) != len(choices):
        raise ValueError("need exactly one permutation choice per move")
    x = start
    configs = [x]
    won = x.is_zero()
    for y, gi in zip(moves, choices):
        if not 0 <= gi < len(spec.S.perms):
            raise IndexError(f"generator index {gi} out of range")
        x = act(spec.S.perms[gi], x) + y
        configs.append(x)
        won = won or x.is_zero()
    return TraceResult(tuple(configs), won)


def leading_index(x: ModVector, basis: ZpBasis) -> Optional[int]:
    """Largest basis index with a nonzero coefficient in x's expansion,
    or None for the zero vector."""
    coeffs = solve_in_span(list(basis.vectors), x)
    if coeffs is None:
        raise ValueError("vector is not in the basis span; basis is not full rank?")
    lead = None
    for j, c in enumerate(coeffs):
        if c != 0:
            lead = j
    return lead


def zero_config(spec: GameSpec) -> ModVector:
    return zero_vector(spec.m, spec.n)
