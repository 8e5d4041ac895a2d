"""Exact linear algebra over Z_p, plus the Z_m vectors the game is played with.

Everything here is small and exact: matrices are NumPy int64 arrays reduced
mod p after every operation, pivoting always takes the lowest usable index,
and kernel/solution bases are the canonical reduced-echelon ones so results
are reproducible run to run.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .perm import GeneratorSet, Permutation, closure


@dataclass(frozen=True)
class ModVector:
    """A length-n vector of residues mod m."""

    m: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("modulus must be >= 1")
        if any(not 0 <= e < self.m for e in self.entries):
            raise ValueError(f"entries must lie in [0, {self.m}): {self.entries}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __add__(self, other: "ModVector") -> "ModVector":
        self._check(other)
        return ModVector(self.m, tuple((a + b) % self.m for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ModVector") -> "ModVector":
        self._check(other)
        return ModVector(self.m, tuple((a - b) % self.m for a, b in zip(self.entries, other.entries)))

    def scale(self, k: int) -> "ModVector":
        return ModVector(self.m, tuple((k * a) % self.m for a in self.entries))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def _check(self, other: "ModVector"):
        if self.m != other.m or self.n != other.n:
            raise ValueError("vectors must share modulus and length")


def mod_vector(m: int, entries) -> ModVector:
    return ModVector(m, tuple(int(e) % m for e in entries))


def zero_vector(m: int, n: int) -> ModVector:
    return ModVector(m, (0,) * n)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def vp(i: int, p: int) -> int:
    """p-adic valuation: the largest e with p^e dividing i."""
    if i <= 0:
        raise ValueError("valuation needs a positive integer")
    e = 0
    while i % p == 0:
        i //= p
        e += 1
    return e


def _rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = mat.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot = None
        for i in range(r, rows):
            if m[i, c] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m % p, pivots


def _kernel_basis(mat: np.ndarray, p: int) -> list[np.ndarray]:
    """Canonical basis of {x : mat @ x = 0 (mod p)}, one vector per free column."""
    cols = mat.shape[1]
    r, pivots = _rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-r[row, f]) % p
        basis.append(v % p)
    return basis


def _matrix_inverse(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    aug = np.concatenate([mat % p, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = _rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:, n:] % p


def _perm_matrix(g: Permutation) -> np.ndarray:
    """Matrix of the coordinate action: (P x)[g(i)] = x[i]."""
    n = g.n
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        m[g.mapping[i], i] = 1
    return m


@dataclass(frozen=True)
class ZpBasis:
    """An ordered basis x_0 .. x_{n-1} of Z_p^n."""

    p: int
    vectors: tuple[ModVector, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        n = len(self.vectors)
        for v in self.vectors:
            if v.m != self.p or v.n != n:
                raise ValueError("basis vectors must be length-n vectors mod p")
        mat = np.array([v.entries for v in self.vectors], dtype=np.int64).T
        _, pivots = _rref(mat, self.p)
        if len(pivots) != n:
            raise ValueError("vectors do not form a basis (rank deficient)")

    @property
    def n(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """Columns are the basis vectors."""
        return np.array([v.entries for v in self.vectors], dtype=np.int64).T


def binomial_basis(p: int, n: int) -> ZpBasis:
    """Basis vectors x_j with entry i = C(i, j) mod p, for n a power of p.

    The matrix with these columns is lower triangular with unit diagonal, so
    the vectors are a basis without further checking; they are also exactly
    the distinct moves used by the ruler-schedule synthesizer on rotation
    games.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = n
    while k > 1:
        if k % p != 0:
            raise ValueError(f"{n} is not a power of {p}")
        k //= p
    table = np.zeros((n, n), dtype=np.int64)
    table[:, 0] = 1
    for i in range(1, n):
        for j in range(1, i + 1):
            table[i, j] = (table[i - 1, j - 1] + table[i - 1, j]) % p
    vectors = tuple(ModVector(p, tuple(int(x) for x in table[:, j])) for j in range(n))
    return ZpBasis(p, vectors)


def solve_in_span(vectors: Sequence[ModVector], target: ModVector) -> Optional[list[int]]:
    """Coefficients expressing target over the given vectors, or None.

    Gaussian elimination over Z_p with lowest-index pivoting; when the
    vectors are dependent, free coefficients are set to zero, so the answer
    is deterministic.  None is the distinguished "not in span" outcome.
    """
    p = target.m
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    n = target.n
    k = len(vectors)
    for v in vectors:
        if v.m != p or v.n != n:
            raise ValueError("vectors must share the target's modulus and length")
    if k == 0:
        return [] if target.is_zero() else None
    a = np.zeros((n, k + 1), dtype=np.int64)
    for j, v in enumerate(vectors):
        a[:, j] = v.entries
    a[:, k] = target.entries
    r, pivots = _rref(a, p)
    if k in pivots:
        return None
    coeffs = [0] * k
    for row, pc in enumerate(pivots):
        coeffs[pc] = int(r[row, k])
    return coeffs


def fixed_space(S: GeneratorSet, p: int) -> list[ModVector]:
    """Basis of the vectors in Z_p^n fixed by every generator in S.

    Fixed by S is the same as fixed by the whole generated group, so the
    kernel of the stacked (P_g - I) blocks is all we need.  May be empty.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = S.n
    blocks = []
    for g in S.perms:
        if not g.is_identity():
            blocks.append((_perm_matrix(g) - np.eye(n, dtype=np.int64)) % p)
    if not blocks:
        return [ModVector(p, tuple(int(v) for v in np.eye(n, dtype=np.int64)[i])) for i in range(n)]
    stacked = np.concatenate(blocks, axis=0)
    return [ModVector(p, tuple(int(x) for x in v)) for v in _kernel_basis(stacked, p)]


def _complete_basis(chain: list[np.ndarray], n: int, p: int) -> np.ndarray:
    """Extend the chain to an invertible n x n matrix (columns) by adding
    the unit vectors at the chain's free (non-pivot) coordinates, lowest
    index first."""
    rows = (
        np.array(chain, dtype=np.int64).reshape(len(chain), n)
        if chain
        else np.zeros((0, n), dtype=np.int64)
    )
    _, pivots = _rref(rows, p)
    cols = list(chain)
    for i in range(n):
        if i not in pivots:
            e = np.zeros(n, dtype=np.int64)
            e[i] = 1
            cols.append(e)
    return np.array(cols, dtype=np.int64).T % p


def fixed_chain_basis(S: GeneratorSet, p: int) -> ZpBasis:
    """An ordered basis where each generator moves x_j only within the span
    of x_0 .. x_{j-1}.

    Requires the generated group to be a p-group: then every induced action
    on a quotient of Z_p^n has a nonzero fixed vector, and we harvest one per
    round.  Concretely, the chosen vectors are extended to a full basis, each
    generator is rewritten in those coordinates, the common fixed space of
    the quotient blocks supplies the next vector, and its zero-extension
    preimage joins the chain.
    """
    G = closure(S)
    order = G.order
    while order > 1:
        if order % p != 0:
            raise ValueError(f"group order {G.order} is not a power of {p}")
        order //= p
    n = S.n
    perm_mats = [_perm_matrix(g) for g in S.perms]
    chain: list[np.ndarray] = []
    while len(chain) < n:
        j = len(chain)
        basis_mat = _complete_basis(chain, n, p)
        basis_inv = _matrix_inverse(basis_mat, p)
        quotient_blocks = []
        for pm in perm_mats:
            action = (basis_inv @ pm @ basis_mat) % p
            if j and np.any(action[j:, :j]):
                raise AssertionError("chain prefix is not invariant; construction bug")
            d = action[j:, j:]
            if not np.array_equal(d, np.eye(n - j, dtype=np.int64)):
                quotient_blocks.append((d - np.eye(n - j, dtype=np.int64)) % p)
        if quotient_blocks:
            kernel = _kernel_basis(np.concatenate(quotient_blocks, axis=0), p)
        else:
            kernel = [np.eye(n - j, dtype=np.int64)[0]]
        if not kernel:
            raise ValueError("no fixed vector in quotient; group is not a p-group")
        lift = (basis_mat[:, j:] @ kernel[0]) % p
        chain.append(lift)
    vectors = tuple(ModVector(p, tuple(int(x) for x in v)) for v in chain)
    return ZpBasis(p, vectors)
