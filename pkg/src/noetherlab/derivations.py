"""Order derivations and their one-parameter flows.

Two kinds of generator act on a Jordan algebra:

* self-adjoint: b -> H o b for an observable H; its flow is the thermal
  map exp(s d_H)(b) = U_{exp(sH/2)}(b), which preserves the cone but in
  general not the Jordan product;
* skew-adjoint: a Jordan-product derivation, stored as an explicit
  dim x dim coordinate matrix; its flow exp(t M) preserves product, unit
  and states.

Skew derivations are kept representation-free (a matrix on coordinates)
so the Albert algebra is handled the same way as the special families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.linalg import expm

from . import jordan, spectral
from .errors import (IncompatibleAlgebras, InternalCheckError,
                     InvalidDerivationError)
from .jordan import AlgebraDescriptor, JordanElement

_LEIBNIZ_TOL = 1e-10
_LEIBNIZ_TRIALS = 12
_SELF_ADJOINT_RESIDUAL = 1e-8


def _leibniz_residual(desc: AlgebraDescriptor, M: np.ndarray,
                      trials: int = _LEIBNIZ_TRIALS) -> float:
    """Max |d(a o b) - d(a) o b - a o d(b)| over seeded random pairs."""
    rng = np.random.default_rng(20240117)
    worst = 0.0
    for _ in range(trials):
        a = jordan.random_element(desc, rng)
        b = jordan.random_element(desc, rng)
        na = max(1.0, float(np.linalg.norm(a.coords)))
        nb = max(1.0, float(np.linalg.norm(b.coords)))
        a, b = a * (1.0 / na), b * (1.0 / nb)
        lhs = M @ jordan.jordan_product(a, b).coords
        rhs = (jordan.jordan_product(JordanElement(desc, M @ a.coords), b).coords
               + jordan.jordan_product(a, JordanElement(desc, M @ b.coords)).coords)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


class OrderDerivation:
    """A generator: either multiplication by an observable or a skew derivation."""

    __slots__ = ("descriptor", "kind", "element", "matrix")

    def __init__(self, descriptor, kind, element=None, matrix=None):
        self.descriptor = descriptor
        self.kind = kind
        self.element = element
        self.matrix = matrix

    @staticmethod
    def self_adjoint(H: JordanElement) -> "OrderDerivation":
        return OrderDerivation(H.descriptor, "self_adjoint", element=H,
                               matrix=jordan.mult_operator(H))

    @staticmethod
    def skew_adjoint(desc: AlgebraDescriptor, matrix: np.ndarray,
                     validate: bool = True) -> "OrderDerivation":
        M = np.asarray(matrix, dtype=float)
        if M.shape != (desc.dim, desc.dim):
            raise ValueError(f"matrix must be {desc.dim} x {desc.dim}")
        if validate:
            unit_res = float(np.max(np.abs(M @ jordan.unit(desc).coords)))
            res = _leibniz_residual(desc, M)
            if unit_res > _LEIBNIZ_TOL or res > _LEIBNIZ_TOL:
                raise InvalidDerivationError(
                    f"not a Jordan derivation: Leibniz residual {res:.3e}, "
                    f"unit residual {unit_res:.3e}")
        return OrderDerivation(desc, "skew_adjoint", matrix=M)

    @staticmethod
    def zero(desc: AlgebraDescriptor) -> "OrderDerivation":
        return OrderDerivation(desc, "skew_adjoint",
                               matrix=np.zeros((desc.dim, desc.dim)))

    def __repr__(self):
        return f"OrderDerivation({self.descriptor!r}, {self.kind})"


def commutator_derivation(desc: AlgebraDescriptor,
                          skew_matrix: np.ndarray) -> OrderDerivation:
    """Skew derivation b -> sb - bs from an ambient skew-adjoint matrix.

    Supported for hermR / hermC / hermH (complex realization); useful for
    building oracle generators in tests.
    """
    probe = jordan.unit(desc)
    S = np.asarray(skew_matrix)
    if S.shape != jordan.to_complex_matrix(probe).shape:
        raise ValueError("ambient matrix has the wrong shape")
    if np.max(np.abs(S + S.conj().T)) > 1e-12:
        raise ValueError("ambient matrix must be skew-adjoint")
    cols = []
    for i in range(desc.dim):
        coords = np.zeros(desc.dim)
        coords[i] = 1.0
        B = jordan.to_complex_matrix(JordanElement(desc, coords))
        cols.append(jordan.from_complex_matrix(desc, S @ B - B @ S).coords)
    return OrderDerivation.skew_adjoint(desc, np.array(cols).T)


def apply_derivation(delta: OrderDerivation, b: JordanElement) -> JordanElement:
    if delta.descriptor != b.descriptor:
        raise IncompatibleAlgebras("derivation acts on a different algebra")
    return JordanElement(b.descriptor, delta.matrix @ b.coords)


def flow_self_adjoint(H: JordanElement, s: float, b: JordanElement) -> JordanElement:
    """exp(s d_H)(b) = U_{exp(sH/2)}(b), via functional calculus."""
    if H.descriptor != b.descriptor:
        raise IncompatibleAlgebras("flow acts on a different algebra")
    if s == 0.0:
        return b
    c = spectral.functional_calculus(H, lambda x: np.exp(s * x / 2.0))
    return jordan.quadratic_rep(c, b)


def flow_skew(delta: OrderDerivation, t: float, b: JordanElement) -> JordanElement:
    """exp(t delta)(b) for a skew derivation: matrix exponential on coordinates."""
    if delta.descriptor != b.descriptor:
        raise IncompatibleAlgebras("flow acts on a different algebra")
    if delta.kind != "skew_adjoint":
        raise ValueError("flow_skew needs a skew-adjoint derivation")
    if t == 0.0:
        return b
    return JordanElement(b.descriptor, expm(t * delta.matrix) @ b.coords)


def flow(delta: OrderDerivation, t: float, b: JordanElement) -> JordanElement:
    """Closed-form flow of either derivation kind."""
    if delta.kind == "self_adjoint":
        return flow_self_adjoint(delta.element, t, b)
    return flow_skew(delta, t, b)


@dataclass
class FlowResult:
    samples: List[Tuple[float, JordanElement]]
    method: str = "integrated"
    metadata: dict = field(default_factory=dict)

    def final(self) -> JordanElement:
        return self.samples[-1][1]

    def to_json_rows(self) -> list:
        return [{"t": t, "coords": el.coords.tolist()} for t, el in self.samples]


def integrate_flow(delta: OrderDerivation, b: JordanElement, t_end: float,
                   steps: int) -> FlowResult:
    """Classical fixed-step 4th-order integration of dF/dt = delta(F), F(0) = b."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    M = delta.matrix
    h = t_end / steps
    y = b.coords.copy()
    samples = [(0.0, b)]
    for k in range(steps):
        k1 = M @ y
        k2 = M @ (y + 0.5 * h * k1)
        k3 = M @ (y + 0.5 * h * k2)
        k4 = M @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        samples.append(((k + 1) * h, JordanElement(b.descriptor, y)))
    return FlowResult(samples, "integrated", {"steps": steps, "method": "rk4"})


def recognize_self_adjoint(desc: AlgebraDescriptor,
                           M: np.ndarray) -> Tuple[JordanElement, float]:
    """Least-squares solve M = (b -> H o b) for H; returns (H, residual)."""
    P = jordan.structure(desc).product
    # mult_operator(H)[k, j] = sum_i H_i P[i, j, k]
    A = P.transpose(2, 1, 0).reshape(desc.dim * desc.dim, desc.dim)
    sol, *_ = np.linalg.lstsq(A, M.reshape(-1), rcond=None)
    residual = float(np.max(np.abs(A @ sol - M.reshape(-1))))
    return JordanElement(desc, sol), residual


def bracket_derivations(d1: OrderDerivation, d2: OrderDerivation) -> OrderDerivation:
    """Commutator of generators; grading: [skew,skew] and [self,self] are skew,
    mixed brackets are self-adjoint."""
    if d1.descriptor != d2.descriptor:
        raise IncompatibleAlgebras("derivations act on different algebras")
    desc = d1.descriptor
    C = d1.matrix @ d2.matrix - d2.matrix @ d1.matrix
    selfs = (d1.kind == "self_adjoint") + (d2.kind == "self_adjoint")
    if selfs == 1:
        H, residual = recognize_self_adjoint(desc, C)
        if residual > _SELF_ADJOINT_RESIDUAL:
            raise InternalCheckError(
                f"mixed bracket not representable as H o -: residual {residual:.3e}")
        return OrderDerivation.self_adjoint(H)
    if selfs == 2:
        res = _leibniz_residual(desc, C)
        if res > _SELF_ADJOINT_RESIDUAL:
            raise InternalCheckError(
                f"[self, self] bracket fails the Leibniz law: residual {res:.3e}")
        return OrderDerivation(desc, "skew_adjoint", matrix=C)
    return OrderDerivation(desc, "skew_adjoint", matrix=C)
