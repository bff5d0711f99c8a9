"""States, spectral probability measures, Gibbs states and thermal flows.

A state is represented by a density element d via the positive-definite
trace form: omega(a) = trace_form(a, d).  Thermal translation acts on the
density through the quadratic representation, which is self-adjoint for
the trace form, so

    omega(U_c(b)) = trace_form(b, U_c(d)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import jordan, spectral
from .errors import IncompatibleAlgebras, NotPositiveError
from .jordan import AlgebraDescriptor, JordanElement


@dataclass
class State:
    """Positive normalized linear functional, stored as a density element."""

    descriptor: AlgebraDescriptor
    density: JordanElement

    def __post_init__(self):
        if self.density.descriptor != self.descriptor:
            raise IncompatibleAlgebras("density lives in a different algebra")
        if not spectral.is_positive(self.density, tol=1e-8):
            raise NotPositiveError("density has negative spectrum")
        norm = jordan.trace_form(self.density, jordan.unit(self.descriptor))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"density not normalized: trace_form(d, 1) = {norm}")

    def to_dict(self) -> dict:
        d = self.density.to_dict()
        d["density"] = True
        return d

    @staticmethod
    def from_dict(d: dict) -> "State":
        el = JordanElement.from_dict(d)
        return State(el.descriptor, el)


def trace_state(desc: AlgebraDescriptor) -> State:
    """The maximal-entropy state, invariant under all Jordan automorphisms."""
    one = jordan.unit(desc)
    return State(desc, one * (1.0 / jordan.trace_form(one, one)))


def state_from_density(density: JordanElement, normalize: bool = False) -> State:
    d = density
    if normalize:
        z = jordan.trace_form(d, jordan.unit(d.descriptor))
        d = d * (1.0 / z)
    return State(d.descriptor, d)


def evaluate(omega: State, a: JordanElement) -> float:
    if a.descriptor != omega.descriptor:
        raise IncompatibleAlgebras("observable lives in a different algebra")
    return jordan.trace_form(a, omega.density)


def spectral_measure(omega: State, a: JordanElement) -> List[Tuple[float, float]]:
    """Probability measure on the spectrum: p_i = omega(e_i)."""
    dec = spectral.spectrum(a)
    return [(lam, evaluate(omega, e)) for lam, e in zip(dec.eigenvalues, dec.idempotents)]


def partition_function(omega: State, hamiltonian: JordanElement, beta: float) -> float:
    """Z(beta) = omega(exp(-beta H))."""
    if beta == 0.0:
        return 1.0
    return evaluate(omega, spectral.functional_calculus(hamiltonian, lambda x: np.exp(-beta * x)))


def thermal_translate(omega: State, hamiltonian: JordanElement,
                      beta: float) -> Tuple[State, float]:
    """Translate omega in inverse temperature by beta.

    Returns the normalized state b -> omega(U_{exp(-beta H/2)}(b)) / Z and the
    normalization Z = omega(exp(-beta H)).
    """
    if beta == 0.0:
        return omega, 1.0
    c = spectral.functional_calculus(hamiltonian, lambda x: np.exp(-beta * x / 2.0))
    pushed = jordan.quadratic_rep(c, omega.density)
    z = jordan.trace_form(pushed, jordan.unit(omega.descriptor))
    return State(omega.descriptor, pushed * (1.0 / z)), z


def gibbs_state(omega_ref: State, hamiltonian: JordanElement, beta: float) -> State:
    """Thermal equilibrium state at inverse temperature beta relative to omega_ref."""
    state, _ = thermal_translate(omega_ref, hamiltonian, beta)
    return state


def star_product(a: JordanElement, b: JordanElement) -> JordanElement:
    """a * b = U_{sqrt(a)}(b); requires a >= 0, preserves positivity of b."""
    if a.descriptor != b.descriptor:
        raise IncompatibleAlgebras("star product needs a shared algebra")
    if not spectral.is_positive(a, tol=1e-9):
        raise NotPositiveError("star product requires a positive left factor")
    return jordan.quadratic_rep(spectral.jsqrt(a), b)
