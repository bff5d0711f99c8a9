"""Order derivations and flows against ambient matrix oracles."""

import numpy as np
import pytest
from scipy.linalg import expm

from noetherlab import derivations, jordan, spectral
from noetherlab.derivations import OrderDerivation
from noetherlab.errors import (IncompatibleAlgebras, InternalCheckError,
                               InvalidDerivationError)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
DESC2 = jordan.herm_c(2)


def _el(M, desc=DESC2):
    return jordan.from_complex_matrix(desc, M)


def _skew_from(M, desc=DESC2):
    # derivation b -> [iM/ something]? use the ambient commutator with a
    # skew-adjoint matrix S = -iM for self-adjoint M
    return derivations.commutator_derivation(desc, -1j * M)


def test_self_adjoint_flow_matches_matrix_oracle():
    # exp(s d_H)(b) = e^{sH/2} B e^{sH/2}
    rng = np.random.default_rng(3)
    for _ in range(20):
        H = jordan.random_element(DESC2, rng)
        b = jordan.random_element(DESC2, rng)
        s = float(rng.uniform(-1.5, 1.5))
        got = derivations.flow_self_adjoint(H, s, b)
        E = expm(0.5 * s * jordan.to_complex_matrix(H))
        want = _el(E @ jordan.to_complex_matrix(b) @ E)
        assert np.allclose(got.coords, want.coords, atol=1e-9)


def test_skew_flow_rotates_pauli():
    # oracle: e^{-it sz} sx e^{it sz} = cos(2t) sx + sin(2t) sy
    delta = _skew_from(SZ)
    sx = _el(SX)
    for t in (0.2, 1.0, np.pi / 4):
        got = derivations.flow_skew(delta, t, sx)
        want = _el(np.cos(2 * t) * SX + np.sin(2 * t) * SY)
        assert np.allclose(got.coords, want.coords, atol=1e-10)
    # displacement magnitude 2|sin t| in JB norm
    for t in (0.3, 1.0, 2.7):
        disp = spectral.jb_norm(derivations.flow_skew(delta, t, sx) - sx)
        assert disp == pytest.approx(2.0 * abs(np.sin(t)), abs=1e-9)


def test_skew_flow_preserves_structure():
    rng = np.random.default_rng(5)
    delta = _skew_from(SZ + 0.7 * SX)
    a, b = (jordan.random_element(DESC2, rng) for _ in range(2))
    t = 0.9
    fa = derivations.flow_skew(delta, t, a)
    fb = derivations.flow_skew(delta, t, b)
    fab = derivations.flow_skew(delta, t, jordan.jordan_product(a, b))
    assert np.allclose(jordan.jordan_product(fa, fb).coords, fab.coords,
                       atol=1e-10)
    one = jordan.unit(DESC2)
    assert np.allclose(derivations.flow_skew(delta, t, one).coords, one.coords)
    # spectrum is preserved
    assert spectral.jb_norm(fa) == pytest.approx(spectral.jb_norm(a))


def test_self_adjoint_flow_breaks_product():
    # thermal flows preserve the cone but not the product
    rng = np.random.default_rng(7)
    H = jordan.random_element(DESC2, rng)
    a, b = (jordan.random_element(DESC2, rng) for _ in range(2))
    t = 1.0
    fa = derivations.flow_self_adjoint(H, t, a)
    fb = derivations.flow_self_adjoint(H, t, b)
    fab = derivations.flow_self_adjoint(H, t, jordan.jordan_product(a, b))
    assert spectral.jb_norm(jordan.jordan_product(fa, fb) - fab) > 1e-3
    # but positivity is preserved
    pos = jordan.jordan_product(a, a)
    assert spectral.is_positive(derivations.flow_self_adjoint(H, t, pos),
                                tol=1e-9)


def test_invalid_derivation_rejected():
    with pytest.raises(InvalidDerivationError):
        OrderDerivation.skew_adjoint(DESC2, np.eye(DESC2.dim))
    rng = np.random.default_rng(9)
    with pytest.raises(InvalidDerivationError):
        OrderDerivation.skew_adjoint(DESC2, rng.standard_normal((4, 4)))


def test_commutator_derivation_validation():
    with pytest.raises(ValueError):
        derivations.commutator_derivation(DESC2, SX)  # not skew-adjoint
    with pytest.raises(ValueError):
        derivations.commutator_derivation(DESC2, -1j * np.eye(3))


def test_apply_derivation_and_zero():
    delta = _skew_from(SZ)
    sx, sy = _el(SX), _el(SY)
    # d(sx) = -i[ -i sz... oracle: S B - B S with S = -i sz
    S = -1j * SZ
    want = _el(S @ SX - SX @ S)
    assert np.allclose(derivations.apply_derivation(delta, sx).coords,
                       want.coords)
    z = OrderDerivation.zero(DESC2)
    assert np.allclose(derivations.apply_derivation(z, sy).coords, 0.0)
    with pytest.raises(IncompatibleAlgebras):
        derivations.apply_derivation(delta, jordan.unit(jordan.herm_c(3)))


def test_integrate_flow_matches_closed_form():
    rng = np.random.default_rng(11)
    delta = _skew_from(SZ + 0.3 * SY)
    b = jordan.random_element(DESC2, rng)
    res = derivations.integrate_flow(delta, b, 2.0, 1000)
    want = derivations.flow_skew(delta, 2.0, b)
    assert spectral.jb_norm(res.final() - want) < 1e-6
    assert res.metadata["steps"] == 1000
    rows = res.to_json_rows()
    assert rows[0]["t"] == 0.0 and len(rows) == 1001
    # self-adjoint generator: dF/dt = H o F
    H = jordan.random_element(DESC2, rng) * 0.5
    dh = OrderDerivation.self_adjoint(H)
    res = derivations.integrate_flow(dh, b, 2.0, 1000)
    want = derivations.flow_self_adjoint(H, 2.0, b)
    assert spectral.jb_norm(res.final() - want) < 1e-6


def test_recognize_self_adjoint():
    rng = np.random.default_rng(13)
    H = jordan.random_element(DESC2, rng)
    got, residual = derivations.recognize_self_adjoint(
        DESC2, jordan.mult_operator(H))
    assert residual < 1e-12
    assert np.allclose(got.coords, H.coords)


def test_bracket_grading():
    rng = np.random.default_rng(17)
    a, b = (jordan.random_element(DESC2, rng) for _ in range(2))
    da = OrderDerivation.self_adjoint(a)
    db = OrderDerivation.self_adjoint(b)
    skew = derivations.bracket_derivations(da, db)
    assert skew.kind == "skew_adjoint"
    # [d_a, d_b](c) = a o (b o c) - b o (a o c), derived by expansion
    c = jordan.random_element(DESC2, rng)
    want = (jordan.jordan_product(a, jordan.jordan_product(b, c))
            - jordan.jordan_product(b, jordan.jordan_product(a, c)))
    assert np.allclose(skew.matrix @ c.coords, want.coords, atol=1e-12)
    # mixed bracket is self-adjoint again
    mixed = derivations.bracket_derivations(da, skew)
    assert mixed.kind == "self_adjoint"
    # [skew, skew] stays skew
    d2 = _skew_from(SZ)
    d3 = _skew_from(SX)
    ss = derivations.bracket_derivations(d2, d3)
    assert ss.kind == "skew_adjoint"
    res = derivations._leibniz_residual(DESC2, ss.matrix)
    assert res < 1e-10


def test_bracket_grading_internal_check():
    # a forged "self-adjoint" generator whose bracket is not a derivation
    rng = np.random.default_rng(19)
    a = jordan.random_element(DESC2, rng)
    fake = OrderDerivation(DESC2, "self_adjoint", element=a,
                           matrix=rng.standard_normal((4, 4)))
    db = OrderDerivation.self_adjoint(jordan.random_element(DESC2, rng))
    with pytest.raises(InternalCheckError):
        derivations.bracket_derivations(fake, db)


def test_flows_work_on_albert():
    # skew derivations built from bracketing two self-adjoint generators
    desc = jordan.albert()
    rng = np.random.default_rng(23)
    a, b = (jordan.random_element(desc, rng) for _ in range(2))
    skew = derivations.bracket_derivations(OrderDerivation.self_adjoint(a),
                                           OrderDerivation.self_adjoint(b))
    x, y = (jordan.random_element(desc, rng) for _ in range(2))
    t = 0.7
    fx = derivations.flow(skew, t, x)
    fy = derivations.flow(skew, t, y)
    fxy = derivations.flow(skew, t, jordan.jordan_product(x, y))
    assert spectral.jb_norm(jordan.jordan_product(fx, fy) - fxy) < 1e-9
