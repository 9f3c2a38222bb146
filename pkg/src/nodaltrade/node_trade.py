"""Recover an invariant tensor from its contractions against all diagonals.

The linear system is M w = data over the pairing basis, where M is the
loop matrix at the flavor's specialization point.  M is invertible exactly
on the invariant subspace, so a data vector arising from an invariant
tensor is recovered by the blockwise restricted inverse and re-expanded
through the form tensors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentDataError, InvalidInputError, SubspaceError
from .loop_matrix import (
    PairingVector,
    decompose_isotypic,
    is_admissible,
    restricted_inverse_apply,
)
from .tensor_oracle import (
    BilinearSpace,
    DenseTensor,
    all_diagonal_multivectors,
    all_form_tensors,
)


def primitive_insertion_pairs(a: int) -> int:
    """Number of node trades for a primitive insertions; refuses odd a.

    With an odd number of primitive insertions the invariant is zero and
    there is nothing to solve for.
    """
    if a < 0:
        raise InvalidInputError(f"insertion count must be >= 0, got {a}")
    if a % 2:
        raise InvalidInputError(
            f"odd number of primitive insertions ({a}): the invariant vanishes "
            "and the solver has nothing to recover"
        )
    return a // 2


@dataclass(frozen=True)
class InvariantTensor:
    """An invariant tensor together with pairing-basis coordinates.

    The tensor always equals the expansion of `coordinates` through the
    form tensors, which places it in the image of the pairing map and
    hence in the invariant subspace.
    """

    n: int
    space: BilinearSpace
    tensor: DenseTensor
    coordinates: PairingVector

    @staticmethod
    def from_coordinates(n: int, space: BilinearSpace, coords) -> "InvariantTensor":
        if not isinstance(coords, PairingVector):
            coords = PairingVector(n, coords)
        forms = all_form_tensors(n, space)
        size = space.dim ** (2 * n)
        acc = [Fraction(0)] * size
        for c, f in zip(coords.coords, forms):
            if not c:
                continue
            for flat, value in enumerate(f.coeffs):
                if value:
                    acc[flat] += c * value
        tensor = DenseTensor(n=n, dim=space.dim, coeffs=tuple(acc))
        return InvariantTensor(n=n, space=space, tensor=tensor, coordinates=coords)

    @staticmethod
    def zero(n: int, space: BilinearSpace) -> "InvariantTensor":
        return InvariantTensor.from_coordinates(n, space, PairingVector.zero(n))


def spot_check_invariance(tensor: DenseTensor, space: BilinearSpace) -> bool:
    """Check invariance under a finite generating set of form symmetries.

    Uses monomial symmetries only (basis permutations and sign flips that
    preserve the form, plus -Id), which is a spot check rather than a
    proof of full group invariance.
    """
    for mapping in _monomial_generators(space):
        if not _fixed_by_monomial(tensor, mapping):
            return False
    # -Id acts by (-1)^(2n) = +1 on an even-order tensor, hence trivially
    return True


def _monomial_generators(space: BilinearSpace):
    """Signed basis maps preserving the form: list of (image, sign) per index."""
    d, k = space.dim, space.k
    gens = []
    if space.flavor == "orthogonal":
        if d >= 2:  # swap the first two basis vectors
            swap = [(i, 1) for i in range(d)]
            swap[0], swap[1] = (1, 1), (0, 1)
            gens.append(tuple(swap))
        flip = [(i, 1) for i in range(d)]
        flip[0] = (0, -1)
        gens.append(tuple(flip))
    else:
        if k >= 2:  # swap the hyperbolic planes (e1,f1) <-> (e2,f2)
            swap = [(i, 1) for i in range(d)]
            swap[0], swap[1] = (1, 1), (0, 1)
            swap[k], swap[k + 1] = (k + 1, 1), (k, 1)
            gens.append(tuple(swap))
        # e1 -> f1, f1 -> -e1 preserves the symplectic form
        rot = [(i, 1) for i in range(d)]
        rot[0] = (k, 1)
        rot[k] = (0, -1)
        gens.append(tuple(rot))
    return gens


def _fixed_by_monomial(t: DenseTensor, mapping) -> bool:
    dim, order = t.dim, t.order
    for flat, value in enumerate(t.coeffs):
        rem = flat
        idx = [0] * order
        for i in range(order - 1, -1, -1):
            idx[i] = rem % dim
            rem //= dim
        src = 0
        sign = 1
        for a in idx:
            b, s = mapping[a]
            src = src * dim + b
            sign *= s
        if Fraction(t.coeffs[src]) * sign != Fraction(value):
            return False
    return True


def contract_with_all_diagonals(omega: InvariantTensor) -> PairingVector:
    """Vector of contractions of the tensor against every diagonal multivector."""
    diags = all_diagonal_multivectors(omega.n, omega.space)
    return PairingVector(
        omega.n, tuple(contract_dense(omega.tensor, d) for d in diags)
    )


def contract_dense(t: DenseTensor, d: DenseTensor) -> Fraction:
    """Contraction driven by the sparse support of the diagonal factor."""
    if t.n != d.n or t.dim != d.dim:
        raise InvalidInputError("shape mismatch in contraction")
    return Fraction(sum(a * b for a, b in zip(t.coeffs, d.coeffs) if b))


def recover(contractions, n: int, space: BilinearSpace, sign: int = 1) -> InvariantTensor:
    """The unique invariant tensor whose diagonal contractions match.

    `sign` lets the caller fix the orientation convention relating nodal
    data to diagonal contractions (+1 by default); the data vector is
    multiplied by it before solving.  Data with a nonzero component in an
    inadmissible block cannot come from an invariant tensor and is
    rejected.
    """
    if sign not in (1, -1):
        raise InvalidInputError(f"sign must be +1 or -1, got {sign}")
    if not isinstance(contractions, PairingVector):
        contractions = PairingVector(n, contractions)
    if contractions.n != n:
        raise InvalidInputError("contraction vector size does not match n")
    data = contractions.scale(sign)
    try:
        coords = restricted_inverse_apply(n, space.flavor, space.k, data)
    except SubspaceError as exc:
        raise InconsistentDataError(
            f"contraction data does not come from an invariant tensor: {exc}"
        ) from exc
    return InvariantTensor.from_coordinates(n, space, coords)


def recover_batch(contraction_vectors, n: int, space: BilinearSpace, sign: int = 1):
    """Componentwise recovery for vector-valued data (one tensor per component)."""
    return [recover(v, n, space, sign=sign) for v in contraction_vectors]


def inadmissible_residual(v: PairingVector, space: BilinearSpace) -> PairingVector:
    """Component of v outside the invariant subspace (zero for valid data)."""
    result = PairingVector.zero(v.n)
    for lam, component in decompose_isotypic(v).items():
        if not is_admissible(space.flavor, space.k, lam):
            result = result + component
    return result
