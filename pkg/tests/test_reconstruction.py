"""Dynamical correspondences and the rebuilt complex *-algebra."""

import numpy as np
import pytest

from noetherlab import jordan, reconstruction as rec
from noetherlab.errors import InvalidCorrespondenceError, InvalidDerivationError
from noetherlab.jordan import JordanElement
from noetherlab.reconstruction import ComplexStarElement

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
DESC2 = jordan.herm_c(2)
PSI = rec.canonical_correspondence(DESC2)


def _el(M, desc=DESC2):
    return jordan.from_complex_matrix(desc, M)


def test_canonical_bracket_matches_commutator_oracle():
    # {a, b} = (i/2)[a, b]
    got = PSI.bracket(_el(SX), _el(SY))
    want = _el(0.5j * (SX @ SY - SY @ SX))  # = -sz
    assert np.allclose(got.coords, want.coords)
    assert np.allclose(got.coords, _el(-SZ).coords)
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = (jordan.random_element(DESC2, rng) for _ in range(2))
        A, B = jordan.to_complex_matrix(a), jordan.to_complex_matrix(b)
        want = _el(0.5j * (A @ B - B @ A))
        assert np.allclose(PSI.bracket(a, b).coords, want.coords, atol=1e-12)


def test_canonical_only_on_hermc():
    with pytest.raises(ValueError):
        rec.canonical_correspondence(jordan.herm_r(3))
    with pytest.raises(ValueError):
        rec.canonical_correspondence(jordan.spin(4))


def test_correspondence_validation():
    rng = np.random.default_rng(5)
    with pytest.raises(InvalidDerivationError):
        rec.DynamicalCorrespondence(DESC2, rng.standard_normal((4, 4, 4)))
    with pytest.raises(ValueError):
        rec.DynamicalCorrespondence(DESC2, np.zeros((3, 3, 3)))


def test_conditions_a_and_b():
    ok_a, res_a = rec.check_condition_A(PSI)
    ok_b, res_b = rec.check_condition_B(PSI)
    assert ok_a and res_a < 1e-12
    assert ok_b and res_b < 1e-12
    # rescaling breaks condition (B) but not (A)
    scaled = PSI.scaled(2.0)
    ok_a2, _ = rec.check_condition_A(scaled)
    ok_b2, res = rec.check_condition_B(scaled)
    assert ok_a2
    assert not ok_b2 and res > 1.0
    # the zero correspondence passes (A) and fails (B)
    zero = rec.zero_correspondence(DESC2)
    assert rec.check_condition_A(zero)[0]
    assert not rec.check_condition_B(zero)[0]


def test_reconstruction_conditions_canonical_pass():
    for n in (2, 3):
        psi = rec.canonical_correspondence(jordan.herm_c(n))
        report = rec.check_reconstruction_conditions(psi, trials=50)
        assert report["all_passed"], report
        for name in ("antisymmetry", "commutativity", "leibniz", "associator"):
            assert report[name]["max_residual"] < 1e-12


def test_reconstruction_condition_4_fails_for_zero():
    zero = rec.zero_correspondence(DESC2)
    report = rec.check_reconstruction_conditions(zero, trials=50)
    assert not report["all_passed"]
    assert not report["associator"]["passed"]
    w = report["associator"]["witness"]
    assert w is not None
    # the witness reproduces the failure
    a = JordanElement(DESC2, w["a"])
    b = JordanElement(DESC2, w["b"])
    c = JordanElement(DESC2, w["c"])
    jp = jordan.jordan_product
    assoc = jp(jp(a, b), c) - jp(a, jp(b, c))
    assert np.max(np.abs(assoc.coords)) > 1e-6


def test_complex_mul_matches_matrix_product():
    rng = np.random.default_rng(7)
    for _ in range(20):
        x = ComplexStarElement(jordan.random_element(DESC2, rng),
                               jordan.random_element(DESC2, rng))
        y = ComplexStarElement(jordan.random_element(DESC2, rng),
                               jordan.random_element(DESC2, rng))
        X = (jordan.to_complex_matrix(x.re).astype(complex)
             + 1j * jordan.to_complex_matrix(x.im))
        Y = (jordan.to_complex_matrix(y.re).astype(complex)
             + 1j * jordan.to_complex_matrix(y.im))
        Z = X @ Y
        got = rec.complex_mul(x, y, PSI)
        want_re = _el(0.5 * (Z + Z.conj().T))
        want_im = _el(0.5j * (Z.conj().T - Z))
        assert np.allclose(got.re.coords, want_re.coords, atol=1e-10)
        assert np.allclose(got.im.coords, want_im.coords, atol=1e-10)


def test_star_and_scaling():
    rng = np.random.default_rng(11)
    x = ComplexStarElement(jordan.random_element(DESC2, rng),
                           jordan.random_element(DESC2, rng))
    assert np.allclose(rec.star(rec.star(x)).re.coords, x.re.coords)
    y = x.scale(2.0 - 1.0j)
    back = y.scale(1.0 / (2.0 - 1.0j))
    assert np.allclose(back.re.coords, x.re.coords)
    assert np.allclose(back.im.coords, x.im.coords)


def test_cstar_norm_value():
    # ||sx + i sy|| = 2: x*x = (sx - i sy)(sx + i sy) has norm 4
    x = ComplexStarElement(_el(SX), _el(SY))
    assert rec.cstar_norm(x, PSI) == pytest.approx(2.0)
    # hermitian element: C*-norm is the JB norm
    h = ComplexStarElement.from_real(_el(SZ))
    assert rec.cstar_norm(h, PSI) == pytest.approx(1.0)
    # a symmetric table makes x* x pick up an imaginary part
    bad = rec.DynamicalCorrespondence(DESC2, jordan.structure(DESC2).product,
                                      validate=False)
    with pytest.raises(InvalidCorrespondenceError):
        rec.cstar_norm(x, bad)


def test_verify_cstar_canonical():
    for n in (2, 3):
        psi = rec.canonical_correspondence(jordan.herm_c(n))
        v = rec.verify_cstar(psi, trials=40)
        assert v.all_passed, v.to_dict()
        assert v.matrix_isomorphism is True
        assert v.residuals["matrix_isomorphism"] < 1e-10


def test_verify_cstar_zero_fails_with_witness():
    v = rec.verify_cstar(rec.zero_correspondence(DESC2), trials=40)
    assert not v.all_passed
    assert not v.associativity
    assert v.witness is not None and v.witness["axiom"] == "associativity"
    d = v.to_dict()
    assert d["all_passed"] is False


def test_obstruction_tables():
    for n in (2, 3, 4):
        t = rec.correspondence_obstruction(jordan.herm_r(n))
        assert (t["dim_O"], t["dim_L"]) == (n * (n + 1) // 2, n * (n - 1) // 2)
        assert t["linear_obstruction"]
    for n in (2, 3):
        t = rec.correspondence_obstruction(jordan.herm_h(n))
        assert (t["dim_O"], t["dim_L"]) == (2 * n * n - n, 2 * n * n + n)
        assert t["linear_obstruction"]
        assert t["typo_flag"] is True
        assert "misquoted_dim_O" in t
    t = rec.correspondence_obstruction(jordan.herm_c(3))
    assert not t["linear_obstruction"]
    assert t["dim_O"] == t["dim_L"] == 9
    with pytest.raises(ValueError):
        rec.correspondence_obstruction(jordan.spin(4))


def test_correspondence_serialization():
    d = PSI.to_dict()
    back = rec.DynamicalCorrespondence.from_dict(d)
    assert np.allclose(back.table, PSI.table)
    assert back.descriptor == DESC2


def test_transposed_flips_sign():
    rng = np.random.default_rng(13)
    a, b = (jordan.random_element(DESC2, rng) for _ in range(2))
    flipped = PSI.transposed()
    assert np.allclose(flipped.bracket(a, b).coords,
                       PSI.bracket(b, a).coords)
