"""Spectral theory against eigensolver and closed-form oracles."""

import numpy as np
import pytest

from noetherlab import jordan, spectral
from noetherlab.errors import FunctionDomainError
from noetherlab.jordan import JordanElement

SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)

ALL_DESCS = [jordan.herm_r(3), jordan.herm_c(3), jordan.herm_h(2),
             jordan.spin(4), jordan.albert(),
             jordan.direct_sum(jordan.herm_c(2), jordan.spin(3))]


def test_spectrum_of_unit():
    dec = spectral.spectrum(jordan.unit(jordan.herm_c(3)))
    assert dec.eigenvalues == [1.0]
    assert dec.multiplicities == [3]
    assert np.allclose(dec.idempotents[0].coords,
                       jordan.unit(jordan.herm_c(3)).coords)


def test_spin_closed_form():
    desc = jordan.spin(3)
    rng = np.random.default_rng(3)
    c = rng.standard_normal(4)
    a = JordanElement(desc, c)
    r = float(np.linalg.norm(c[:3]))
    dec = spectral.spectrum(a)
    assert dec.eigenvalues == pytest.approx([c[3] - r, c[3] + r])
    for e in dec.idempotents:
        assert np.allclose(jordan.jordan_product(e, e).coords, e.coords)
    # degenerate x = 0
    dec0 = spectral.spectrum(JordanElement(desc, [0, 0, 0, 2.5]))
    assert dec0.eigenvalues == [2.5] and dec0.multiplicities == [2]


def test_albert_diagonal_spectrum():
    coords = np.zeros(27)
    coords[:3] = [0.5, -1.5, 3.0]
    dec = spectral.spectrum(JordanElement(jordan.albert(), coords))
    assert dec.eigenvalues == pytest.approx([-1.5, 0.5, 3.0])
    assert dec.multiplicities == [1, 1, 1]


def test_hermh_halved_multiplicities():
    a = jordan.unit(jordan.herm_h(2))
    dec = spectral.spectrum(a)
    assert dec.multiplicities == [2]


def test_decomposition_relations_all_families():
    rng = np.random.default_rng(5)
    for desc in ALL_DESCS:
        for _ in range(10):
            a = jordan.random_element(desc, rng)
            dec = spectral.spectrum(a)
            assert np.max(np.abs(dec.reconstruct().coords - a.coords)) < 1e-9
            total = jordan.zero(desc)
            for i, e in enumerate(dec.idempotents):
                total = total + e
                assert np.max(np.abs(
                    (jordan.jordan_product(e, e) - e).coords)) < 1e-9
                for f in dec.idempotents[i + 1:]:
                    assert np.max(np.abs(
                        jordan.jordan_product(e, f).coords)) < 1e-9
            assert np.max(np.abs(total.coords - jordan.unit(desc).coords)) < 1e-9
            assert sum(dec.multiplicities) == desc.rank


def test_functional_calculus_exp_oracle():
    # oracle: matrix exponential by eigendecomposition
    desc = jordan.herm_c(2)
    sz = jordan.from_complex_matrix(desc, SZ)
    got = spectral.jexp(sz)
    want = jordan.from_complex_matrix(desc, np.diag([np.e, 1.0 / np.e]))
    assert np.allclose(got.coords, want.coords)


def test_functional_calculus_identity_and_polynomials():
    rng = np.random.default_rng(7)
    for desc in ALL_DESCS:
        a = jordan.random_element(desc, rng)
        assert np.allclose(
            spectral.functional_calculus(a, lambda x: x).coords, a.coords,
            atol=1e-9)
        got = spectral.functional_calculus(a, lambda x: x ** 3 - 2 * x)
        want = jordan.jpower(a, 3) - 2.0 * a
        assert np.max(np.abs(got.coords - want.coords)) < 1e-8


def test_exp_matches_power_series():
    rng = np.random.default_rng(11)
    desc = jordan.albert()
    a = jordan.random_element(desc, rng)
    a = a * (1.0 / spectral.jb_norm(a))
    series = jordan.zero(desc)
    term = jordan.unit(desc)
    fact = 1.0
    for k in range(1, 30):
        series = series + (1.0 / fact) * term
        term = jordan.jordan_product(term, a)
        fact *= k
    assert np.max(np.abs(spectral.jexp(a).coords - series.coords)) < 1e-12


def test_sqrt_and_abs():
    rng = np.random.default_rng(13)
    for desc in ALL_DESCS:
        a = jordan.random_element(desc, rng)
        sq = jordan.jordan_product(a, a)
        root = spectral.jsqrt(sq)
        assert np.max(np.abs(jordan.jordan_product(root, root).coords
                             - sq.coords)) < 1e-8
        assert np.max(np.abs(root.coords - spectral.jabs(a).coords)) < 1e-8
    sz = jordan.from_complex_matrix(jordan.herm_c(2), SZ)
    with pytest.raises(FunctionDomainError):
        spectral.jsqrt(sz)


def test_jb_norm():
    desc = jordan.herm_c(2)
    assert spectral.jb_norm(jordan.unit(desc)) == pytest.approx(1.0)
    sx = jordan.from_complex_matrix(desc, SX)
    assert spectral.jb_norm(sx) == pytest.approx(1.0)
    rng = np.random.default_rng(17)
    a = jordan.random_element(desc, rng)
    alpha = float(rng.standard_normal())
    assert spectral.jb_norm(alpha * a) == pytest.approx(
        abs(alpha) * spectral.jb_norm(a))
    # oracle: operator norm of the matrix realization
    assert spectral.jb_norm(a) == pytest.approx(
        float(np.linalg.norm(jordan.to_complex_matrix(a), 2)))


def test_jb_axioms_random():
    rng = np.random.default_rng(19)
    for desc in ALL_DESCS:
        for _ in range(20):
            a = jordan.random_element(desc, rng)
            b = jordan.random_element(desc, rng)
            na, nb = spectral.jb_norm(a), spectral.jb_norm(b)
            assert spectral.jb_norm(jordan.jordan_product(a, b)) <= na * nb + 1e-9
            assert spectral.jb_norm(jordan.jpower(a, 2)) == pytest.approx(na * na)
            assert (spectral.jb_norm(jordan.jpower(a, 2))
                    <= spectral.jb_norm(jordan.jpower(a, 2)
                                        + jordan.jpower(b, 2)) + 1e-9)


def test_is_positive():
    desc = jordan.herm_c(2)
    assert spectral.is_positive(jordan.unit(desc))
    sz = jordan.from_complex_matrix(desc, SZ)
    assert not spectral.is_positive(sz)
    rng = np.random.default_rng(23)
    for d in ALL_DESCS:
        a = jordan.random_element(d, rng)
        assert spectral.is_positive(jordan.jordan_product(a, a))


def test_degenerate_clustering():
    # nearly equal eigenvalues collapse into one idempotent
    desc = jordan.herm_c(3)
    M = np.diag([1.0, 1.0 + 1e-12, 2.0]).astype(complex)
    dec = spectral.spectrum(jordan.from_complex_matrix(desc, M))
    assert dec.multiplicities == [2, 1]
