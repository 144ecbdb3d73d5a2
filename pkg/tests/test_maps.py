import math

import numpy as np
import pytest

from posmap import linalg, regions
from posmap.linalg import bell_projector, hermitian_eigenvalues, kron, matrix_unit, partial_transpose
from posmap.maps import (
    MapKind,
    MapParams,
    apply_extended_map,
    apply_map,
    block_matrix,
    choi_matrix,
)


def rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_map_params_rejects_small_n():
    with pytest.raises(ValueError):
        MapParams(0.0, 0.0, 2)


def test_apply_map_corner_unit_spectrum():
    # oracle: at alpha = beta = 0 the image of e_11 is a Kronecker sum, so its
    # spectrum is all pairwise sums of the e_11 spectrum with itself
    p = MapParams(0.0, 0.0, 3)
    image = apply_map(MapKind.PHI, p, matrix_unit(3, 1, 1))
    ev_e11 = np.linalg.eigvalsh(matrix_unit(3, 1, 1))
    expected = np.sort(np.add.outer(ev_e11, ev_e11).ravel())
    got = hermitian_eigenvalues(image).eigenvalues
    assert np.abs(got - expected).max() <= 1e-12
    assert np.allclose(np.sort(got), [0] * 4 + [1] * 4 + [2], atol=1e-12)


@pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (1.5, -0.5), (-2.0, 3.0)])
def test_apply_map_identity_input(alpha, beta):
    p = MapParams(alpha, beta, 3)
    image = apply_map(MapKind.PHI, p, np.eye(3))
    expected = (2 + 3 * alpha) * np.eye(9) + 3 * beta * bell_projector(3)
    assert np.abs(image - expected).max() <= 1e-12
    ev = hermitian_eigenvalues(image).eigenvalues
    expected_ev = np.sort([2 + 3 * alpha] * 8 + [2 + 3 * alpha + 9 * beta])
    assert np.abs(ev - expected_ev).max() <= 1e-9


def test_halves_sum_to_whole():
    rng = np.random.default_rng(0)
    p = MapParams(0.8, -1.7, 3)
    for _ in range(50):
        a = rand_complex(rng, (3, 3))
        total = apply_map(MapKind.PHI1, p, a) + apply_map(MapKind.PHI2, p, a)
        whole = apply_map(MapKind.PHI, p, a)
        assert np.abs(total - whole).max() <= 1e-13 * linalg.entry_scale(whole)


@pytest.mark.parametrize("kind", list(MapKind))
def test_linearity(kind):
    rng = np.random.default_rng(1)
    p = MapParams(1.1, 0.3, 3)
    a, b = rand_complex(rng, (3, 3)), rand_complex(rng, (3, 3))
    s, t = 0.7 - 0.2j, -1.3 + 0.9j
    lhs = apply_map(kind, p, s * a + t * b)
    rhs = s * apply_map(kind, p, a) + t * apply_map(kind, p, b)
    assert np.abs(lhs - rhs).max() <= 1e-12 * linalg.entry_scale(rhs)


@pytest.mark.parametrize("kind", list(MapKind))
def test_self_adjointness_exact(kind):
    rng = np.random.default_rng(2)
    p = MapParams(-0.4, 1.2, 3)
    a = rand_complex(rng, (3, 3))
    assert np.array_equal(apply_map(kind, p, a.conj().T), apply_map(kind, p, a).conj().T)


@pytest.mark.parametrize("n", [3, 4])
def test_trace_affine_law(n):
    rng = np.random.default_rng(n)
    p = MapParams(0.9, -0.6, n)
    for _ in range(10):
        a = rand_complex(rng, (n, n))
        got = np.trace(apply_map(MapKind.PHI, p, a))
        expected = (2 * n + p.alpha * n * n + p.beta * n) * np.trace(a)
        assert abs(got - expected) <= 1e-10 * max(1.0, abs(expected))


def test_split_kinds_require_n3():
    p = MapParams(0.0, 0.0, 4)
    for kind in (MapKind.PHI1, MapKind.PHI2, MapKind.PHI1_TRANSPOSE):
        with pytest.raises(ValueError):
            apply_map(kind, p, np.eye(4))


def test_apply_map_dimension_mismatch():
    with pytest.raises(ValueError):
        apply_map(MapKind.PHI, MapParams(0.0, 0.0, 3), np.eye(4))


# --- Choi matrices ------------------------------------------------------------

@pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (1.0, -1.0), (2.0, 0.5)])
def test_choi_trace(alpha, beta):
    c = choi_matrix(MapKind.PHI, MapParams(alpha, beta, 3))
    assert abs(np.trace(c) - (18 + 27 * alpha + 9 * beta)) <= 1e-10 * (1 + abs(np.trace(c)))


def test_choi_min_eigenvalue_at_cp_corner():
    c = choi_matrix(MapKind.PHI, MapParams(1.0, 0.0, 3))
    ev = hermitian_eigenvalues(c).eigenvalues
    assert abs(ev[0]) <= 1e-9


def test_choi_transpose_composition_is_double_partial_transpose():
    p = MapParams(0.7, -1.2, 3)
    c = choi_matrix(MapKind.PHI, p)
    ct = choi_matrix(MapKind.PHI_TRANSPOSE, p)
    # transposing both inner factors in one step ...
    assert np.array_equal(ct, partial_transpose(c, 3, 9, "second"))
    # ... equals transposing the middle factor then the innermost one
    middle = partial_transpose(partial_transpose(c, 9, 3, "second"), 3, 9, "second")
    innermost = partial_transpose(middle, 9, 3, "second")
    assert np.array_equal(ct, innermost)


def test_choi_is_hermitian_for_all_kinds():
    p = MapParams(-1.3, 0.4, 3)
    for kind in MapKind:
        c = choi_matrix(kind, p)
        assert np.array_equal(c, c.conj().T)


# --- block matrices -------------------------------------------------------------

def test_block_matrix_full_size_equals_choi():
    p = MapParams(0.3, -0.9, 3)
    assert np.array_equal(block_matrix(p, 3), choi_matrix(MapKind.PHI, p))


def test_block2_frozen_multiset():
    # closed multiset at (1, 0): cubic factors as x(x^2 - 2x - 2)
    r3 = math.sqrt(3.0)
    expected = np.sort(
        [3.0, 0.0] + [2.0] * 7 + [1.0] * 3 + [2 - r3] * 2 + [1.0] * 2 + [2 + r3] * 2
    )
    ev = hermitian_eigenvalues(block_matrix(MapParams(1.0, 0.0, 3), 2)).eigenvalues
    assert np.abs(ev - expected).max() <= 1e-9
    assert abs(ev[0]) <= 1e-9


def test_block2_not_psd_at_origin():
    ev = hermitian_eigenvalues(block_matrix(MapParams(0.0, 0.0, 3), 2)).eigenvalues
    assert abs(ev[0] - (-1.0)) <= 1e-9


@pytest.mark.parametrize("k", [0, 1, 4])
def test_block_matrix_range(k):
    with pytest.raises(ValueError):
        block_matrix(MapParams(0.0, 0.0, 3), k)


def test_block_matrix_n4():
    p = MapParams(1.0, 0.0, 4)
    b = block_matrix(p, 2)
    assert b.shape == (32, 32)
    assert np.array_equal(b, b.conj().T)


# --- extended map ----------------------------------------------------------------

def test_extended_map_single_block():
    rng = np.random.default_rng(8)
    p = MapParams(0.2, 0.1, 3)
    a = rand_complex(rng, (3, 3))
    m = kron(matrix_unit(2, 1, 1), a)
    out = apply_extended_map(p, 2, m)
    assert np.array_equal(out, kron(matrix_unit(2, 1, 1), apply_map(MapKind.PHI, p, a)))


def test_extended_map_matches_block_matrix():
    p = MapParams(-0.5, 0.7, 3)
    # sum of e_ij (x) e_ij on C^2 (x) C^3 maps to the 2-block matrix
    x = np.zeros((6, 6), dtype=complex)
    for i in range(2):
        for j in range(2):
            x += kron(matrix_unit(2, i + 1, j + 1), matrix_unit(3, i + 1, j + 1))
    assert np.array_equal(apply_extended_map(p, 2, x), block_matrix(p, 2))


def test_extended_map_product_states_stay_psd_in_positive_region():
    p = MapParams(0.5, 0.5, 3)          # positive (beta >= 0, alpha >= 0)
    assert regions.is_positive(p)
    rng = np.random.default_rng(21)
    for seed in range(5):
        u = linalg.random_pure_state(2, seed)
        v = linalg.random_pure_state(3, 100 + seed)
        x = np.kron(u, v)
        image = apply_extended_map(p, 2, x @ x.conj().T)
        ev = hermitian_eigenvalues(image).eigenvalues
        assert ev[0] >= -1e-9 * linalg.entry_scale(image)


def test_extended_map_dimension_mismatch():
    with pytest.raises(ValueError):
        apply_extended_map(MapParams(0.0, 0.0, 3), 2, np.eye(5))
    with pytest.raises(ValueError):
        apply_extended_map(MapParams(0.0, 0.0, 3), 0, np.eye(3))
