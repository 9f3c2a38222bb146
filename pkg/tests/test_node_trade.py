import random
from fractions import Fraction

import pytest

from nodaltrade.errors import InconsistentDataError, InvalidInputError
from nodaltrade.loop_matrix import (
    PairingVector,
    build_loop_matrix,
    flavor_specialization,
    project_invariant,
)
from nodaltrade.node_trade import (
    InvariantTensor,
    contract_with_all_diagonals,
    inadmissible_residual,
    primitive_insertion_pairs,
    recover,
    recover_batch,
    spot_check_invariance,
)
from nodaltrade.pairings import double_factorial_odd
from nodaltrade.tensor_oracle import BilinearSpace


def test_odd_insertions_refused():
    assert primitive_insertion_pairs(4) == 2
    assert primitive_insertion_pairs(0) == 0
    with pytest.raises(InvalidInputError):
        primitive_insertion_pairs(3)
    with pytest.raises(InvalidInputError):
        primitive_insertion_pairs(-2)


def test_symplectic_form_contraction_is_minus_two():
    # the invariant built from the single 1-pairing is the form itself
    space = BilinearSpace("symplectic", 1)
    omega = InvariantTensor.from_coordinates(1, space, (1,))
    assert contract_with_all_diagonals(omega).coords == (Fraction(-2),)


def test_zero_tensor_contracts_to_zero():
    space = BilinearSpace("orthogonal", 2)
    omega = InvariantTensor.zero(2, space)
    assert contract_with_all_diagonals(omega).is_zero()
    assert omega.tensor.is_zero()


def test_first_row_fixture():
    # coordinates (1, 0, 0) give the product form; contractions read off
    # the first row of the diagonal-insertion matrix at k=2
    space = BilinearSpace("orthogonal", 2)
    omega = InvariantTensor.from_coordinates(2, space, (1, 0, 0))
    assert contract_with_all_diagonals(omega).coords == (4, 2, 2)


def test_contractions_match_loop_matrix_route():
    # dual route: tensor contractions vs matrix-times-coordinates
    rng = random.Random(11)
    for flavor in ("orthogonal", "symplectic"):
        for n in (1, 2):
            for k in (1, 2):
                space = BilinearSpace(flavor, k)
                m = build_loop_matrix(n, flavor_specialization(flavor, k))
                for _ in range(4):
                    coords = PairingVector(
                        n,
                        tuple(
                            Fraction(rng.randint(-5, 5))
                            for _ in range(double_factorial_odd(n))
                        ),
                    )
                    omega = InvariantTensor.from_coordinates(n, space, coords)
                    assert contract_with_all_diagonals(omega).coords == m.apply(coords).coords


def test_recover_elliptic_warmup():
    # symplectic 2k=2, n=1: data (-2 lambda) recovers lambda times the form
    space = BilinearSpace("symplectic", 1)
    lam = Fraction(7, 3)
    omega = recover(PairingVector(1, (-2 * lam,)), 1, space)
    expected = InvariantTensor.from_coordinates(1, space, (lam,))
    assert omega.tensor == expected.tensor
    assert omega.coordinates.coords == (lam,)


def test_recover_zero():
    space = BilinearSpace("orthogonal", 3)
    omega = recover(PairingVector.zero(2), 2, space)
    assert omega.tensor.is_zero()


def test_recover_sign_parameter():
    space = BilinearSpace("symplectic", 1)
    omega = recover(PairingVector(1, (Fraction(2),)), 1, space, sign=-1)
    assert omega.coordinates.coords == (Fraction(1),)
    with pytest.raises(InvalidInputError):
        recover(PairingVector(1, (1,)), 1, space, sign=2)


def test_contraction_data_always_lands_in_invariant_subspace():
    # the monodromy filter: contraction vectors of invariant tensors have
    # no component in the inadmissible blocks
    rng = random.Random(777)
    for flavor, n, k in (("orthogonal", 2, 1), ("symplectic", 2, 1), ("symplectic", 3, 1)):
        space = BilinearSpace(flavor, k)
        from nodaltrade.pairings import double_factorial_odd as dfo

        for _ in range(5):
            coords = PairingVector(
                n, tuple(Fraction(rng.randint(-6, 6)) for _ in range(dfo(n)))
            )
            omega = InvariantTensor.from_coordinates(n, space, coords)
            data = contract_with_all_diagonals(omega)
            assert inadmissible_residual(data, space).is_zero()


def test_recover_rejects_non_invariant_data():
    # orthogonal k=1 at n=2: valid data must be proportional to (1, 1, 1)
    space = BilinearSpace("orthogonal", 1)
    with pytest.raises(InconsistentDataError):
        recover(PairingVector(2, (1, 0, 0)), 2, space)
    assert not inadmissible_residual(PairingVector(2, (1, 0, 0)), space).is_zero()
    assert inadmissible_residual(PairingVector(2, (5, 5, 5)), space).is_zero()


def test_roundtrip_seeded_random():
    rng = random.Random(424242)
    for flavor in ("orthogonal", "symplectic"):
        for n in (1, 2):
            for k in (1, 2, 3):
                space = BilinearSpace(flavor, k)
                for _ in range(10):
                    raw = PairingVector(
                        n,
                        tuple(
                            Fraction(rng.randint(-8, 8), rng.randint(1, 4))
                            for _ in range(double_factorial_odd(n))
                        ),
                    )
                    omega = InvariantTensor.from_coordinates(n, space, raw)
                    data = contract_with_all_diagonals(omega)
                    back = recover(data, n, space)
                    # tensors agree exactly; coordinates agree after projecting
                    # away the kernel of the pairing map
                    assert back.tensor == omega.tensor
                    projected = project_invariant(raw, flavor, k)
                    assert back.coordinates.coords == projected.coords


def test_recover_batch_componentwise():
    space = BilinearSpace("orthogonal", 2)
    vectors = [PairingVector(2, (4, 2, 2)), PairingVector.zero(2)]
    tensors = recover_batch(vectors, 2, space)
    assert tensors[0].coordinates.coords == (1, 0, 0) or not tensors[0].tensor.is_zero()
    assert tensors[1].tensor.is_zero()
    # first vector is the first matrix row, so it recovers the pure form
    expected = InvariantTensor.from_coordinates(2, space, (1, 0, 0))
    assert tensors[0].tensor == expected.tensor


def test_spot_check_invariance():
    for flavor, k in (("orthogonal", 2), ("symplectic", 2)):
        space = BilinearSpace(flavor, k)
        omega = InvariantTensor.from_coordinates(2, space, (2, -1, 3))
        assert spot_check_invariance(omega.tensor, space)
    # a non-invariant tensor fails the generator check
    from nodaltrade.tensor_oracle import DenseTensor

    space = BilinearSpace("orthogonal", 2)
    bad = [0] * space.dim**4
    bad[0] = 1  # the bare monomial e1 x e1 x e1 x e1 is not O(V)-invariant
    assert not spot_check_invariance(DenseTensor(2, space.dim, tuple(bad)), space)
