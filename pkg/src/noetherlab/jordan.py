"""Concrete finite-dimensional formally real Jordan algebras.

Every supported algebra gets a fixed ordered basis, so elements are plain
real coordinate vectors.  The families are the five in the classification:

* ``hermR(n)``, ``hermC(n)``, ``hermH(n)`` -- self-adjoint n x n matrices
  over R, C, H with a o b = (ab + ba)/2,
* ``albert`` -- 3 x 3 self-adjoint octonionic matrices,
* ``spin(n)`` -- R^n + R with (x, t) o (x', t') = (t x' + t' x, x.x' + t t'),

plus finite direct sums.  For the matrix families the basis consists of the
diagonal units E_ii and, for each pair i < j and each division-algebra unit
u, the self-adjoint matrix u E_ij + conj(u) E_ji.  Products are evaluated
through a cached structure tensor, so all families go through one code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .division import multiplication_table
from .errors import IncompatibleAlgebras

_KDIM = {"hermR": 1, "hermC": 2, "hermH": 4, "albert": 8}
_MATRIX_FAMILIES = ("hermR", "hermC", "hermH", "albert")


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Identifies one concrete Jordan algebra and fixes its basis."""

    family: str
    n: int = 0
    parts: Tuple["AlgebraDescriptor", ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.family in ("hermR", "hermC", "hermH", "spin"):
            if self.n < 1:
                raise ValueError(f"{self.family} needs rank parameter n >= 1")
        elif self.family == "albert":
            object.__setattr__(self, "n", 3)
        elif self.family == "sum":
            if not self.parts:
                raise ValueError("direct sum needs at least one component")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def dim(self) -> int:
        f, n = self.family, self.n
        if f == "hermR":
            return n * (n + 1) // 2
        if f == "hermC":
            return n * n
        if f == "hermH":
            return 2 * n * n - n
        if f == "albert":
            return 27
        if f == "spin":
            return n + 1
        return sum(p.dim for p in self.parts)

    @property
    def rank(self) -> int:
        if self.family in _MATRIX_FAMILIES:
            return self.n
        if self.family == "spin":
            return 2
        return sum(p.rank for p in self.parts)

    def to_dict(self) -> dict:
        if self.family == "sum":
            return {"family": "sum", "params": {"parts": [p.to_dict() for p in self.parts]}}
        if self.family == "albert":
            return {"family": "albert", "params": {}}
        return {"family": self.family, "params": {"n": self.n}}

    @staticmethod
    def from_dict(d: dict) -> "AlgebraDescriptor":
        fam = d["family"]
        if fam == "sum":
            parts = tuple(AlgebraDescriptor.from_dict(p) for p in d["params"]["parts"])
            return AlgebraDescriptor("sum", parts=parts)
        if fam == "albert":
            return AlgebraDescriptor("albert")
        return AlgebraDescriptor(fam, int(d["params"]["n"]))

    def __repr__(self):
        if self.family == "sum":
            return "sum(" + ", ".join(repr(p) for p in self.parts) + ")"
        if self.family == "albert":
            return "albert"
        return f"{self.family}({self.n})"


def herm_r(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("hermR", n)


def herm_c(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("hermC", n)


def herm_h(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("hermH", n)


def albert() -> AlgebraDescriptor:
    return AlgebraDescriptor("albert")


def spin(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("spin", n)


def direct_sum(*parts: AlgebraDescriptor) -> AlgebraDescriptor:
    return AlgebraDescriptor("sum", parts=tuple(parts))


# --- structure tensors ------------------------------------------------------

class _Structure:
    """Cached per-descriptor data: product tensor, trace form, unit."""

    __slots__ = ("product", "gram", "jtrace", "unit", "kdim")

    def __init__(self, product, jtrace, unit, kdim):
        self.product = product          # P[i, j, k]: e_i o e_j = sum_k P[ijk] e_k
        self.jtrace = jtrace            # linear Jordan trace functional
        self.gram = np.einsum("ijk,k->ij", product, jtrace)
        self.unit = unit
        self.kdim = kdim


_STRUCTURE_CACHE: dict = {}


def _matrix_basis(n: int, k: int):
    """Basis of self-adjoint n x n matrices with k-dimensional entries."""
    basis = []
    for i in range(n):
        b = np.zeros((n, n, k))
        b[i, i, 0] = 1.0
        basis.append(b)
    for i in range(n):
        for j in range(i + 1, n):
            for u in range(k):
                b = np.zeros((n, n, k))
                b[i, j, u] = 1.0
                b[j, i, u] = 1.0 if u == 0 else -1.0
                basis.append(b)
    return basis


def _kmat_coords(n: int, k: int, M: np.ndarray) -> np.ndarray:
    """Read coordinates off a self-adjoint K-matrix (inverse of the basis map)."""
    coords = [M[i, i, 0] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            coords.extend(M[i, j])
    return np.asarray(coords)


def _kmat_mul(A: np.ndarray, B: np.ndarray, T: np.ndarray) -> np.ndarray:
    return np.einsum("ika,kjb,abc->ijc", A, B, T)


def _build_structure(desc: AlgebraDescriptor) -> _Structure:
    dim = desc.dim
    if desc.family in _MATRIX_FAMILIES:
        n, k = desc.n, _KDIM[desc.family]
        T = multiplication_table(k)
        basis = _matrix_basis(n, k)
        P = np.zeros((dim, dim, dim))
        for i in range(dim):
            for j in range(i, dim):
                M = 0.5 * (_kmat_mul(basis[i], basis[j], T)
                           + _kmat_mul(basis[j], basis[i], T))
                P[i, j] = _kmat_coords(n, k, M)
                P[j, i] = P[i, j]
        jtrace = np.zeros(dim)
        jtrace[:n] = 1.0
        unit = np.zeros(dim)
        unit[:n] = 1.0
        return _Structure(P, jtrace, unit, k)
    if desc.family == "spin":
        n = desc.n
        P = np.zeros((dim, dim, dim))
        for i in range(n):
            P[i, i, n] = 1.0          # f_i o f_i = t-unit
            P[i, n, i] = 1.0          # f_i o 1_t = f_i
            P[n, i, i] = 1.0
        P[n, n, n] = 1.0
        jtrace = np.zeros(dim)
        jtrace[n] = 2.0
        unit = np.zeros(dim)
        unit[n] = 1.0
        return _Structure(P, jtrace, unit, 0)
    # direct sum: block structure
    P = np.zeros((dim, dim, dim))
    jtrace = np.zeros(dim)
    unit = np.zeros(dim)
    off = 0
    for part in desc.parts:
        s = structure(part)
        d = part.dim
        P[off:off + d, off:off + d, off:off + d] = s.product
        jtrace[off:off + d] = s.jtrace
        unit[off:off + d] = s.unit
        off += d
    return _Structure(P, jtrace, unit, 0)


def structure(desc: AlgebraDescriptor) -> _Structure:
    s = _STRUCTURE_CACHE.get(desc)
    if s is None:
        s = _build_structure(desc)
        _STRUCTURE_CACHE[desc] = s
    return s


# --- elements ---------------------------------------------------------------

class JordanElement:
    """An observable: real coordinate vector relative to the canonical basis."""

    __slots__ = ("descriptor", "coords")

    def __init__(self, descriptor: AlgebraDescriptor, coords):
        self.descriptor = descriptor
        c = np.asarray(coords, dtype=float)
        if c.shape != (descriptor.dim,):
            raise ValueError(f"expected {descriptor.dim} coordinates, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coordinates must be finite")
        self.coords = c

    def __add__(self, other):
        _check_same(self, other)
        return JordanElement(self.descriptor, self.coords + other.coords)

    def __sub__(self, other):
        _check_same(self, other)
        return JordanElement(self.descriptor, self.coords - other.coords)

    def __neg__(self):
        return JordanElement(self.descriptor, -self.coords)

    def __mul__(self, scalar):
        return JordanElement(self.descriptor, float(scalar) * self.coords)

    __rmul__ = __mul__

    def __repr__(self):
        return f"JordanElement({self.descriptor!r}, {np.round(self.coords, 6).tolist()})"

    def to_dict(self) -> dict:
        d = self.descriptor.to_dict()
        d["coords"] = self.coords.tolist()
        return d

    @staticmethod
    def from_dict(d: dict) -> "JordanElement":
        return JordanElement(AlgebraDescriptor.from_dict(d), d["coords"])


def _check_same(a: JordanElement, b: JordanElement):
    if a.descriptor != b.descriptor:
        raise IncompatibleAlgebras(
            f"cannot combine elements of {a.descriptor!r} and {b.descriptor!r}")


def zero(desc: AlgebraDescriptor) -> JordanElement:
    return JordanElement(desc, np.zeros(desc.dim))


def unit(desc: AlgebraDescriptor) -> JordanElement:
    return JordanElement(desc, structure(desc).unit.copy())


def jordan_product(a: JordanElement, b: JordanElement) -> JordanElement:
    _check_same(a, b)
    P = structure(a.descriptor).product
    return JordanElement(a.descriptor, np.einsum("i,j,ijk->k", a.coords, b.coords, P))


def jpower(a: JordanElement, n: int) -> JordanElement:
    if n < 0:
        raise ValueError("jpower needs a nonnegative exponent")
    if n == 0:
        return unit(a.descriptor)
    out = a
    for _ in range(n - 1):
        out = jordan_product(out, a)
    return out


def quadratic_rep(a: JordanElement, b: JordanElement) -> JordanElement:
    """U_a(b) = 2 (a o (a o b)) - (a o a) o b, the substitute for aba."""
    _check_same(a, b)
    return (2.0 * jordan_product(a, jordan_product(a, b))
            - jordan_product(jordan_product(a, a), b))


def jtrace(a: JordanElement) -> float:
    """Jordan trace: real matrix trace / 2t for spin factors."""
    return float(structure(a.descriptor).jtrace @ a.coords)


def trace_form(a: JordanElement, b: JordanElement) -> float:
    """Positive-definite bilinear form tr(a o b); represents states."""
    _check_same(a, b)
    return float(a.coords @ structure(a.descriptor).gram @ b.coords)


def mult_operator(a: JordanElement) -> np.ndarray:
    """Coordinate matrix of b -> a o b."""
    P = structure(a.descriptor).product
    return np.einsum("i,ijk->kj", a.coords, P)


def random_element(desc: AlgebraDescriptor, rng: np.random.Generator) -> JordanElement:
    return JordanElement(desc, rng.standard_normal(desc.dim))


# --- matrix realizations (oracles and spectral backends) --------------------

def to_kmatrix(a: JordanElement) -> np.ndarray:
    """(n, n, k) coefficient array for the matrix families."""
    desc = a.descriptor
    if desc.family not in _MATRIX_FAMILIES:
        raise ValueError(f"{desc!r} has no matrix realization")
    n, k = desc.n, _KDIM[desc.family]
    M = np.zeros((n, n, k))
    idx = 0
    for i in range(n):
        M[i, i, 0] = a.coords[idx]
        idx += 1
    for i in range(n):
        for j in range(i + 1, n):
            for u in range(k):
                M[i, j, u] = a.coords[idx]
                M[j, i, u] = a.coords[idx] if u == 0 else -a.coords[idx]
                idx += 1
    return M


def from_kmatrix(desc: AlgebraDescriptor, M: np.ndarray) -> JordanElement:
    return JordanElement(desc, _kmat_coords(desc.n, _KDIM[desc.family], M))


def to_complex_matrix(a: JordanElement) -> np.ndarray:
    """Complex realization: n x n for hermR/hermC, 2n x 2n for hermH."""
    desc = a.descriptor
    M = to_kmatrix(a)
    if desc.family == "hermR":
        return M[:, :, 0].copy()
    if desc.family == "hermC":
        return M[:, :, 0] + 1j * M[:, :, 1]
    if desc.family == "hermH":
        A = M[:, :, 0] + 1j * M[:, :, 1]
        B = M[:, :, 2] + 1j * M[:, :, 3]
        return np.block([[A, B], [-B.conj(), A.conj()]])
    raise ValueError(f"{desc!r} has no complex matrix realization")


def from_complex_matrix(desc: AlgebraDescriptor, M: np.ndarray) -> JordanElement:
    if desc.family == "hermR":
        K = np.real(M)[:, :, None]
    elif desc.family == "hermC":
        K = np.stack([np.real(M), np.imag(M)], axis=-1)
    elif desc.family == "hermH":
        n = desc.n
        A = M[:n, :n]
        B = M[:n, n:]
        K = np.stack([np.real(A), np.imag(A), np.real(B), np.imag(B)], axis=-1)
    else:
        raise ValueError(f"{desc!r} has no complex matrix realization")
    return JordanElement(desc, _kmat_coords(desc.n, K.shape[-1], K))
