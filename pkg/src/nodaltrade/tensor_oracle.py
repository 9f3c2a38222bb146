"""Brute-force multilinear oracles on explicit orthogonal/symplectic spaces.

Builds the covariant pairing tensors, the contravariant diagonal
multivectors, and their full contractions on dense coefficient arrays.
The central assertion of the module is that the matrix of contractions
reproduces the loop matrix at x = k (orthogonal) or x = -2k (symplectic);
tests and the CLI perform that comparison entrywise, keeping the two
routes independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import InvalidInputError, ResourceLimitError
from .loop_matrix import ORTHOGONAL, PairingVector, check_flavor, flavor_dimension
from .pairings import Pairing, crossing_number, enumerate_pairings
from .partitions import hook_dimension
from .loop_matrix import admissible_partitions

BRUTE_FORCE_MAX_N = 3
BRUTE_FORCE_MAX_DIM = 6


@dataclass(frozen=True)
class BilinearSpace:
    """A model space with the standard orthogonal or symplectic form.

    dim = k for the orthogonal flavor (orthonormal basis, identity form)
    and 2k for the symplectic flavor (standard basis e_1..e_k, f_1..f_k
    with form(e_mu, f_mu) = 1).
    """

    flavor: str
    k: int

    def __post_init__(self):
        check_flavor(self.flavor)
        if self.k < 1:
            raise InvalidInputError(f"k must be >= 1, got {self.k}")

    @property
    def dim(self) -> int:
        return flavor_dimension(self.flavor, self.k)

    @property
    def form(self) -> tuple[tuple[int, ...], ...]:
        d, k = self.dim, self.k
        rows = [[0] * d for _ in range(d)]
        if self.flavor == ORTHOGONAL:
            for i in range(d):
                rows[i][i] = 1
        else:
            for mu in range(k):
                rows[mu][k + mu] = 1
                rows[k + mu][mu] = -1
        return tuple(tuple(r) for r in rows)

    @property
    def inverse_form(self) -> tuple[tuple[int, ...], ...]:
        if self.flavor == ORTHOGONAL:
            return self.form
        # J^{-1} = -J for the standard symplectic block form
        return tuple(tuple(-x for x in row) for row in self.form)


@dataclass(frozen=True)
class DenseTensor:
    """Order-2n tensor as a dense slot-major coefficient array.

    Index (a_1, ..., a_2n) with 0-based a_i lives at flat position
    sum a_i * dim^(2n - i).  Dense on purpose: the contraction oracle
    should have no shortcuts that could hide a sign error.
    """

    n: int
    dim: int
    coeffs: tuple

    @property
    def order(self) -> int:
        return 2 * self.n

    def __post_init__(self):
        if len(self.coeffs) != self.dim ** (2 * self.n):
            raise InvalidInputError(
                f"need {self.dim ** (2 * self.n)} coefficients, got {len(self.coeffs)}"
            )

    def coefficient(self, index) -> Fraction:
        if len(index) != self.order:
            raise InvalidInputError(f"index must have {self.order} slots")
        flat = 0
        for a in index:
            if not 0 <= a < self.dim:
                raise InvalidInputError(f"index entry {a} out of range 0..{self.dim - 1}")
            flat = flat * self.dim + a
        return Fraction(self.coeffs[flat])

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _zero_coeffs(dim: int, order: int) -> list:
    return [0] * (dim ** order)


def _pair_fill(p: Pairing, dim: int, matrix, sign: int) -> DenseTensor:
    """Dense tensor whose coefficient at (a_1..a_2n) is
    sign * prod over pairs (i,j) of matrix[a_i][a_j]."""
    order = 2 * p.n
    coeffs = _zero_coeffs(dim, order)

    # enumerate only index tuples where every pair hits a nonzero form entry
    def rec(pair_idx, index, value):
        if pair_idx == p.n:
            flat = 0
            for a in index:
                flat = flat * dim + a
            coeffs[flat] = value
            return
        i, j = p.pairs[pair_idx]
        for a in range(dim):
            row = matrix[a]
            for b in range(dim):
                entry = row[b]
                if not entry:
                    continue
                index[i - 1] = a
                index[j - 1] = b
                rec(pair_idx + 1, index, value * entry)

    rec(0, [0] * order, sign)
    return DenseTensor(n=p.n, dim=dim, coeffs=tuple(coeffs))


def form_tensor(p: Pairing, space: BilinearSpace) -> DenseTensor:
    """The covariant tensor: product of the form over the pairs of p.

    Symplectic flavor takes each factor in increasing slot order and
    carries the global crossing sign (-1)^c(P); the orthogonal factor is
    symmetric so no ordering or sign is needed.
    """
    if space.flavor == ORTHOGONAL:
        return _pair_fill(p, space.dim, space.form, 1)
    sign = -1 if crossing_number(p) % 2 else 1
    return _pair_fill(p, space.dim, space.form, sign)


def diagonal_multivector(p: Pairing, space: BilinearSpace) -> DenseTensor:
    """The contravariant tensor: product of inverse-form bivectors.

    In the symplectic flavor the inverse bivector of the pair (i, j),
    i < j, sits in the slots in decreasing order (j, i), which makes its
    slot-(i, j) coefficient array exactly the inverse form matrix; the
    global crossing sign matches the covariant convention.
    """
    if space.flavor == ORTHOGONAL:
        return _pair_fill(p, space.dim, space.inverse_form, 1)
    sign = -1 if crossing_number(p) % 2 else 1
    return _pair_fill(p, space.dim, space.inverse_form, sign)


def contract(form: DenseTensor, vec: DenseTensor) -> Fraction:
    """Full slot-by-slot pairing of a covariant and a contravariant tensor."""
    if form.n != vec.n or form.dim != vec.dim:
        raise InvalidInputError(
            f"shape mismatch: ({form.n}, {form.dim}) vs ({vec.n}, {vec.dim})"
        )
    return Fraction(sum(a * b for a, b in zip(form.coeffs, vec.coeffs) if a))


def permute_slots(t: DenseTensor, g) -> DenseTensor:
    """Move the factor in slot i to slot g(i); g is a 1-based image tuple."""
    order = t.order
    if sorted(g) != list(range(1, order + 1)):
        raise InvalidInputError(f"not a bijection on 1..{order}: {g}")
    dim = t.dim
    coeffs = _zero_coeffs(dim, order)
    # new[a] = old[a o g]: the old factor at slot j is read off at a_{g(j)}
    for flat in range(len(coeffs)):
        rem = flat
        idx = [0] * order
        for i in range(order - 1, -1, -1):
            idx[i] = rem % dim
            rem //= dim
        src = 0
        for j in range(order):
            src = src * dim + idx[g[j] - 1]
        coeffs[flat] = t.coeffs[src]
    return DenseTensor(n=t.n, dim=dim, coeffs=tuple(coeffs))


def _check_brute_force_budget(n: int, dim: int) -> None:
    if n > BRUTE_FORCE_MAX_N or dim > BRUTE_FORCE_MAX_DIM:
        raise ResourceLimitError(
            f"brute force limited to n <= {BRUTE_FORCE_MAX_N} and "
            f"dim <= {BRUTE_FORCE_MAX_DIM}, got n={n}, dim={dim}"
        )


@lru_cache(maxsize=None)
def _cached_tensors(n: int, flavor: str, k: int):
    space = BilinearSpace(flavor, k)
    ps = enumerate_pairings(n)
    forms = tuple(form_tensor(p, space) for p in ps)
    diags = tuple(diagonal_multivector(p, space) for p in ps)
    return forms, diags


def all_form_tensors(n: int, space: BilinearSpace):
    return _cached_tensors(n, space.flavor, space.k)[0]


def all_diagonal_multivectors(n: int, space: BilinearSpace):
    return _cached_tensors(n, space.flavor, space.k)[1]


def diagonal_insertion_matrix(n: int, space: BilinearSpace):
    """Entry (P, P'): contraction of the P form tensor with the P' diagonal.

    Pure brute force over the dense arrays; never consults the loop
    matrix, so comparing the two is a genuine dual-route check.
    """
    _check_brute_force_budget(n, space.dim)
    forms, diags = _cached_tensors(n, space.flavor, space.k)
    return tuple(
        tuple(contract(f, d) for d in diags) for f in forms
    )


def invariant_map_rank(n: int, space: BilinearSpace):
    """Rank and kernel of the map sending a pairing to its form tensor.

    Row-reduces the (2n-1)!! x dim^2n coefficient matrix exactly.  The
    kernel comes back as pairing vectors: the linear combinations of
    pairings whose tensors cancel.
    """
    _check_brute_force_budget(n, space.dim)
    forms, _ = _cached_tensors(n, space.flavor, space.k)
    rows = [list(f.coeffs) for f in forms]
    kernel = [PairingVector(n, combo) for combo in linalg.left_kernel(rows)]
    r = linalg.rank(rows)
    expected = sum(
        hook_dimension(lam) for lam in admissible_partitions(n, space.flavor, space.k)
    )
    if r != expected:
        from .errors import InternalConsistencyError

        raise InternalConsistencyError(
            f"invariant map rank {r} does not match admissible multiplicity {expected}"
        )
    return r, kernel
