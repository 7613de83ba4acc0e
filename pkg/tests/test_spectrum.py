"""Adjacency-algebra decomposition tests.

Expected degree profiles come from independent sources fixed before the
implementation ran: representation theory of small symmetric groups
(classical character tables), the block structure of full matrix algebras,
and a float null-space oracle for center dimensions."""

import numpy as np
import pytest

from ccmm.configuration import CoherentConfiguration
from ccmm.constructions import (
    direct_product,
    fusion,
    group_association_scheme,
    group_scheme,
    schurian,
    trivial_configuration,
)
from ccmm.groups import CyclicGroup, SymmetricGroup
from ccmm.realization import diagonal_action
from ccmm.spectrum import (
    DegreeComputationError,
    center_basis,
    character_degrees,
    max_degree_lower_bound_check,
    regular_representation,
)

# frozen oracle values, written before the implementation ran
CLASSICAL_DEGREES = {
    # group scheme of G has one block per irreducible character of G,
    # with block degree equal to the character degree
    "sym3": (1, 1, 2),
    "sym4": (1, 1, 2, 3, 3),
}


def float_center_dim(config):
    """Independent center-dimension oracle: float null space of the stacked
    commutator constraints."""
    r = config.rank
    t = config.intersection()
    rows = []
    for j in range(r):
        D = np.zeros((r, r))
        for i in range(r):
            for k, p in t.slice(i, j).items():
                D[k, i] += p
            for k, p in t.slice(j, i).items():
                D[k, i] -= p
        rows.append(D)
    system = np.vstack(rows)
    sv = np.linalg.svd(system, compute_uv=False)
    tol = 1e-9 * max(float(sv[0]), 1.0)
    return r - int((sv > tol).sum())


def diag_config(n):
    return schurian(diagonal_action(n))


# -- regular representation ------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 5])
def test_regular_representation_entries_match_tensor(n):
    cfg = group_scheme(CyclicGroup(n))
    t = cfg.intersection()
    L = regular_representation(cfg)
    for i in range(cfg.rank):
        for j in range(cfg.rank):
            for k in range(cfg.rank):
                assert L[i][k, j] == t.p(i, j, k)


@pytest.mark.parametrize(
    "cfg_factory",
    [
        lambda: group_scheme(CyclicGroup(6)),
        lambda: group_scheme(SymmetricGroup(3)),
        lambda: trivial_configuration(3),
        lambda: group_association_scheme(SymmetricGroup(3)),
        lambda: diag_config(2),
    ],
)
def test_regular_representation_is_homomorphism(cfg_factory):
    # L_i L_j = sum_k p^k_{i,j} L_k, exactly, in integers
    cfg = cfg_factory()
    t = cfg.intersection()
    L = regular_representation(cfg)
    r = cfg.rank
    for i in range(r):
        for j in range(r):
            prod = L[i] @ L[j]
            expect = np.zeros((r, r), dtype=np.int64)
            for k, p in t.slice(i, j).items():
                expect += p * L[k]
            assert np.array_equal(prod, expect)


def test_regular_representation_of_identity_class():
    # class 0 of a scheme is the diagonal; its slice acts as identity
    cfg = group_scheme(CyclicGroup(5))
    L = regular_representation(cfg)
    assert np.array_equal(L[0], np.eye(5, dtype=np.int64))


# -- exact linear algebra ----------------------------------------------------


def test_fraction_kernel_needs_back_substitution():
    # regression: overlapping pivot columns, kernel is span{(1, -1, 1)}
    from ccmm.spectrum import _fraction_kernel

    basis = _fraction_kernel([[1, 1, 0], [0, 1, 1]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == v[2] == -v[1]


@pytest.mark.parametrize("seed", range(5))
def test_fraction_kernel_random_matrices(seed):
    from ccmm.spectrum import _fraction_kernel

    rng = np.random.default_rng(seed)
    m = rng.integers(-3, 4, size=(6, 5))
    basis = _fraction_kernel(m.tolist(), 5)
    # dimension agrees with a float rank oracle
    assert len(basis) == 5 - np.linalg.matrix_rank(m)
    # every basis vector is annihilated exactly
    for vec in basis:
        for row in m:
            assert sum(int(a) * b for a, b in zip(row, vec)) == 0


# -- exact center ----------------------------------------------------------


@pytest.mark.parametrize(
    "cfg_factory,expected_dim",
    [
        (lambda: group_scheme(CyclicGroup(7)), 7),  # commutative: everything
        (lambda: trivial_configuration(3), 1),  # full matrix algebra
        (lambda: group_scheme(SymmetricGroup(3)), 3),  # conj classes of S3
        (lambda: group_scheme(SymmetricGroup(4)), 5),  # conj classes of S4
        (lambda: diag_config(3), 3),
    ],
)
def test_center_dimension(cfg_factory, expected_dim):
    cfg = cfg_factory()
    basis = center_basis(cfg)
    assert len(basis) == expected_dim
    assert float_center_dim(cfg) == expected_dim


def test_center_vectors_commute_with_everything():
    cfg = group_scheme(SymmetricGroup(3))
    L = regular_representation(cfg)
    for vec in center_basis(cfg):
        Z = sum(int(c) * L[i] for i, c in enumerate(vec))
        for Li in L:
            assert np.array_equal(Z @ Li, Li @ Z)


def test_center_identity_element_present():
    # the all-classes sum J is central in any scheme; check it lies in the
    # span of the computed basis (via float least squares residual)
    cfg = group_scheme(SymmetricGroup(3))
    basis = np.array(center_basis(cfg), dtype=np.float64)
    target = np.ones(cfg.rank)
    sol, *_ = np.linalg.lstsq(basis.T, target, rcond=None)
    assert np.abs(basis.T @ sol - target).max() < 1e-9


# -- character degrees -----------------------------------------------------


@pytest.mark.parametrize(
    "cfg_factory",
    [
        lambda: group_scheme(CyclicGroup(4)),
        lambda: group_scheme(CyclicGroup(7)),
        lambda: group_association_scheme(SymmetricGroup(3)),
        lambda: group_association_scheme(SymmetricGroup(4)),
        lambda: fusion(group_scheme(CyclicGroup(5)), [[0], [1, 2, 3, 4]]),
    ],
)
def test_commutative_means_all_degrees_one(cfg_factory):
    cfg = cfg_factory()
    assert cfg.is_commutative()
    prof = character_degrees(cfg)
    assert prof.degrees == (1,) * cfg.rank
    assert prof.residual < 1e-6


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivial_configuration_single_block(n):
    prof = character_degrees(trivial_configuration(n))
    assert prof.degrees == (n,)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_diagonal_configuration_degrees(n):
    prof = character_degrees(diag_config(n))
    assert prof.degrees == (n,) * n
    assert prof.residual < 1e-6


def test_symmetric_group_schemes_match_character_tables():
    s3 = character_degrees(group_scheme(SymmetricGroup(3)))
    assert s3.degrees == CLASSICAL_DEGREES["sym3"]
    s4 = character_degrees(group_scheme(SymmetricGroup(4)))
    assert s4.degrees == CLASSICAL_DEGREES["sym4"]


def test_sum_of_squares_is_rank():
    for cfg in [
        group_scheme(SymmetricGroup(3)),
        diag_config(3),
        trivial_configuration(4),
        group_scheme(CyclicGroup(9)),
    ]:
        prof = character_degrees(cfg)
        assert sum(d * d for d in prof.degrees) == cfg.rank


def test_product_degrees_multiply():
    c1 = group_scheme(SymmetricGroup(3))
    c2 = group_scheme(CyclicGroup(2))
    prod = direct_product(c1, c2)
    d1 = character_degrees(c1).degrees
    d2 = character_degrees(c2).degrees
    expect = tuple(sorted(a * b for a in d1 for b in d2))
    assert character_degrees(prod).degrees == expect


def test_product_of_trivials_is_trivial_profile():
    prod = direct_product(trivial_configuration(2), trivial_configuration(2))
    assert character_degrees(prod).degrees == (4,)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_degrees_invariant_under_class_relabeling(seed):
    cfg = group_scheme(SymmetricGroup(3))
    want = character_degrees(cfg).degrees
    rng = np.random.default_rng(seed)
    perm = rng.permutation(cfg.rank)
    scrambled = CoherentConfiguration.from_class_matrix(perm[cfg.matrix])
    assert character_degrees(scrambled).degrees == want


def test_degrees_deterministic():
    cfg = diag_config(3)
    a = character_degrees(cfg)
    b = character_degrees(cfg)
    assert a.degrees == b.degrees
    assert a.residual == b.residual


def test_profile_iterates_degrees():
    prof = character_degrees(trivial_configuration(2))
    assert list(prof) == [2]


def test_seed_changes_tolerated():
    cfg = group_scheme(SymmetricGroup(3))
    assert character_degrees(cfg, seed=5).degrees == (1, 1, 2)


def test_rank_cap_enforced():
    cfg = group_scheme(CyclicGroup(5))
    with pytest.raises(ValueError):
        character_degrees(cfg, cap=4)


def test_conjugate_pair_characters_separate():
    # Z/5 has two conjugate pairs of complex characters; a real symmetric
    # central element cannot separate them, the Hermitian one must
    prof = character_degrees(group_scheme(CyclicGroup(5)))
    assert prof.degrees == (1, 1, 1, 1, 1)


# -- fiber lower bound -----------------------------------------------------


def test_max_degree_bound_trivial_config():
    # n fibers of one point each, single block of degree n: equality
    cfg = trivial_configuration(3)
    assert cfg.n_fibers == 3
    assert max_degree_lower_bound_check(cfg)


def test_max_degree_bound_across_corpus():
    for cfg in [
        group_scheme(CyclicGroup(6)),
        group_scheme(SymmetricGroup(3)),
        diag_config(2),
        trivial_configuration(4),
        direct_product(trivial_configuration(2), group_scheme(CyclicGroup(2))),
    ]:
        assert max_degree_lower_bound_check(cfg)


def test_max_degree_bound_accepts_precomputed_profile():
    cfg = trivial_configuration(2)
    prof = character_degrees(cfg)
    assert max_degree_lower_bound_check(cfg, prof)


def test_degree_error_carries_residual():
    err = DegreeComputationError("boom", 0.25)
    assert err.residual == 0.25
