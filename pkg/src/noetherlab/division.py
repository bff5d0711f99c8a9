"""Arithmetic for the normed division algebras R, C, H and O.

Elements are plain numpy coefficient vectors of length 1, 2, 4 or 8.
Multiplication tables are generated by Cayley-Dickson doubling starting
from the reals, with the doubling rule

    (a, b)(c, d) = (ac - conj(d) b,  da + b conj(c))

so the quaternion and octonion conventions are fixed by construction
(in particular i*j = k and e1*e2 = e3).  Use ``format_table(8)`` to see
the resulting octonion table.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

NAMES = {1: "R", 2: "C", 4: "H", 8: "O"}


@lru_cache(maxsize=None)
def multiplication_table(dim: int) -> np.ndarray:
    """Structure tensor T with e_i e_j = sum_k T[i, j, k] e_k."""
    if dim == 1:
        return np.ones((1, 1, 1))
    if dim not in NAMES:
        raise ValueError(f"unsupported dimension {dim}")
    d = dim // 2
    half = multiplication_table(d)
    cj = np.ones(d)
    cj[1:] = -1.0
    T = np.zeros((dim, dim, dim))
    for i in range(d):
        for j in range(d):
            # (e_i, 0)(e_j, 0) = (e_i e_j, 0)
            T[i, j, :d] = half[i, j]
            # (e_i, 0)(0, e_j) = (0, e_j e_i)
            T[i, d + j, d:] = half[j, i]
            # (0, e_i)(e_j, 0) = (0, e_i conj(e_j))
            T[d + i, j, d:] = cj[j] * half[i, j]
            # (0, e_i)(0, e_j) = (-conj(e_j) e_i, 0)
            T[d + i, d + j, :d] = -cj[j] * half[j, i]
    T.setflags(write=False)
    return T


def da_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of two coefficient vectors over the same algebra."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("operands must live in the same division algebra")
    T = multiplication_table(x.shape[0])
    return np.einsum("i,j,ijk->k", x, y, T)


def da_conj(x: np.ndarray) -> np.ndarray:
    """Conjugation: negate all imaginary coefficients."""
    out = np.array(x, dtype=float)
    out[1:] = -out[1:]
    return out


def da_norm(x: np.ndarray) -> float:
    """Euclidean norm, which is multiplicative on R, C, H and O."""
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def da_inv(x: np.ndarray) -> np.ndarray:
    """Multiplicative inverse conj(x) / |x|^2."""
    n2 = float(np.dot(x, x))
    if n2 == 0.0:
        raise ZeroDivisionError("division algebra element 0 has no inverse")
    return da_conj(x) / n2


def format_table(dim: int) -> str:
    """Render the basis multiplication table as text."""
    T = multiplication_table(dim)
    labels = ["1"] + [f"e{i}" for i in range(1, dim)]
    rows = []
    for i in range(dim):
        cells = []
        for j in range(dim):
            k = int(np.argmax(np.abs(T[i, j])))
            sign = "-" if T[i, j, k] < 0 else ""
            cells.append(f"{sign}{labels[k]}")
        rows.append("  ".join(f"{c:>4}" for c in cells))
    return "\n".join(rows)


class _CayleyDicksonNumber:
    """Shared operator plumbing for the wrapper classes below."""

    __slots__ = ("coeffs",)
    dim = 1

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coefficients")
        self.coeffs = c

    @classmethod
    def basis(cls, i: int):
        c = np.zeros(cls.dim)
        c[i] = 1.0
        return cls(c)

    def __add__(self, other):
        return type(self)(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return type(self)(self.coeffs - other.coeffs)

    def __neg__(self):
        return type(self)(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return type(self)(other * self.coeffs)
        return type(self)(da_mul(self.coeffs, other.coeffs))

    def __rmul__(self, scalar):
        return type(self)(scalar * self.coeffs)

    def conj(self):
        return type(self)(da_conj(self.coeffs))

    def norm(self) -> float:
        return da_norm(self.coeffs)

    def inv(self):
        return type(self)(da_inv(self.coeffs))

    def __eq__(self, other):
        return np.allclose(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({self.coeffs.tolist()})"


class Quaternion(_CayleyDicksonNumber):
    """w + x i + y j + z k with the Cayley-Dickson convention i j = k."""

    dim = 4

    @property
    def w(self):
        return self.coeffs[0]

    @property
    def x(self):
        return self.coeffs[1]

    @property
    def y(self):
        return self.coeffs[2]

    @property
    def z(self):
        return self.coeffs[3]


class Octonion(_CayleyDicksonNumber):
    """c0 + c1 e1 + ... + c7 e7; alternative but not associative."""

    dim = 8
