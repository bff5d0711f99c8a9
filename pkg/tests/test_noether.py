"""Noether equivalence: flows and brackets measured independently."""

import numpy as np
import pytest

from noetherlab import derivations, jordan, noether, reconstruction, spectral
from noetherlab.errors import IncompatibleAlgebras

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
DESC2 = jordan.herm_c(2)
PSI = reconstruction.canonical_correspondence(DESC2)


def _el(M):
    return jordan.from_complex_matrix(DESC2, M)


def test_unit_is_fixed_by_any_skew_generator():
    delta = derivations.commutator_derivation(DESC2, -1j * (SZ + 0.4 * SX))
    assert noether.generates_symmetries(delta, jordan.unit(DESC2))


def test_sz_fixes_sz_but_not_sx():
    delta = derivations.commutator_derivation(DESC2, -1j * SZ)
    assert noether.generates_symmetries(delta, _el(SZ))
    assert not noether.generates_symmetries(delta, _el(SX))
    # displacement magnitude oracle 2|sin t|
    assert noether.max_displacement(delta, _el(SX), [1.0]) == pytest.approx(
        2.0 * abs(np.sin(1.0)), abs=1e-9)


def test_generates_symmetries_argument_checks():
    delta = derivations.commutator_derivation(DESC2, -1j * SZ)
    with pytest.raises(IncompatibleAlgebras):
        noether.generates_symmetries(delta, jordan.unit(jordan.herm_c(3)))
    with pytest.raises(ValueError):
        noether.generates_symmetries(delta, _el(SZ), t_samples=[])
    with pytest.raises(ValueError):
        noether.generates_symmetries(_el(SZ), _el(SX))  # no correspondence
    assert noether.generates_symmetries(_el(SZ), _el(SZ), correspondence=PSI)


def test_noether_check_noncommuting():
    rep = noether.noether_check(_el(SZ), _el(SX), PSI)
    # oracle: [sz, sx] = 2i sy, nonzero
    assert rep.bracket_norm == pytest.approx(1.0)  # |(i/2)[sz,sx]| = |sy|
    assert not rep.a_fixes_b and not rep.b_fixes_a
    assert rep.consistent
    assert rep.self_conservation_a and rep.self_conservation_b
    d = rep.to_dict()
    assert d["consistent"] is True and d["bracket_norm"] == rep.bracket_norm


def test_noether_check_commuting_polynomial_pair():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = jordan.random_element(DESC2, rng)
        b = noether.commuting_pair(a, rng)
        # oracle: polynomials in one matrix commute
        A, B = jordan.to_complex_matrix(a), jordan.to_complex_matrix(b)
        assert np.max(np.abs(A @ B - B @ A)) < 1e-10
        rep = noether.noether_check(a, b, PSI)
        assert rep.consistent and rep.a_fixes_b and rep.b_fixes_a
        assert rep.bracket_norm < 1e-10


def test_noether_check_self_pair():
    rng = np.random.default_rng(5)
    a = jordan.random_element(DESC2, rng)
    rep = noether.noether_check(a, a, PSI)
    assert rep.consistent and rep.a_fixes_b and rep.b_fixes_a


def test_self_conservation_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = jordan.random_element(DESC2, rng)
        assert noether.self_conservation_check(a, PSI)
    assert noether.self_conservation_check(jordan.unit(DESC2), PSI)
    assert noether.self_conservation_check(jordan.zero(DESC2), PSI)


def test_bracket_antisymmetry_verdicts():
    # canonical bracket: antisymmetric
    v = noether.bracket_antisymmetry_from_self_conservation(DESC2, PSI.table)
    assert v.ok and v.alternating and v.antisymmetric and v.witness is None
    # the Jordan product itself: symmetric, fails with witness {a,a} = a^2
    P = jordan.structure(DESC2).product
    v = noether.bracket_antisymmetry_from_self_conservation(DESC2, P)
    assert not v.ok
    assert not v.alternating and not v.antisymmetric
    assert v.witness is not None and v.witness["kind"] == "alternating"
    # zero bracket: trivially fine
    v = noether.bracket_antisymmetry_from_self_conservation(
        DESC2, np.zeros((4, 4, 4)))
    assert v.ok
    with pytest.raises(ValueError):
        noether.bracket_antisymmetry_from_self_conservation(
            DESC2, np.zeros((3, 3, 3)))


def test_integrated_constancy_for_zero_bracket():
    # bracket zero implies the integrated flow holds the observable constant
    rng = np.random.default_rng(11)
    a = jordan.random_element(DESC2, rng)
    b = noether.commuting_pair(a, rng)
    delta = PSI.derivation(a)
    res = derivations.integrate_flow(delta, b, 2.0, 400)
    worst = max(spectral.jb_norm(el - b) for _, el in res.samples)
    assert worst < 1e-7


def test_flows_never_consult_bracket():
    # independence witness: a pair with tiny but nonzero bracket still gets
    # its flow verdicts from the flows themselves
    eps = 1e-3
    a = _el(SZ)
    b = _el(SX) * eps
    rep = noether.noether_check(a, b, PSI, tol=1e-8)
    assert rep.bracket_norm == pytest.approx(eps, rel=1e-6)
    assert not rep.a_fixes_b and not rep.b_fixes_a
    assert rep.consistent
