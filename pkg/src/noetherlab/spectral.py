"""Spectral decomposition, functional calculus, JB norm, cone membership.

Backends per family:

* hermR / hermC: symmetric / Hermitian eigensolver on the matrix realization.
* hermH: Hermitian eigensolver on the 2n x 2n complex adjoint realization;
  eigenvalues come in pairs, multiplicities are halved.
* albert: characteristic cubic from the power traces via Newton's identities,
  idempotents by Lagrange interpolation in the powers 1, a, a^2.
* spin: closed form, eigenvalues t +/- |x| with idempotents (+-x/2|x|, 1/2).
* direct sums: componentwise, eigenvalues merged across components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import jordan
from .errors import FunctionDomainError
from .jordan import AlgebraDescriptor, JordanElement

# Eigenvalues closer than this are treated as one spectral point.
CLUSTER_TOL = 1e-8


@dataclass
class SpectralDecomposition:
    eigenvalues: List[float]            # sorted ascending
    idempotents: List[JordanElement]
    multiplicities: List[int]

    def reconstruct(self) -> JordanElement:
        out = jordan.zero(self.idempotents[0].descriptor)
        for lam, e in zip(self.eigenvalues, self.idempotents):
            out = out + lam * e
        return out


def _cluster(values: np.ndarray, tol: float = CLUSTER_TOL):
    """Group sorted values whose consecutive gaps are below tol."""
    order = np.argsort(values)
    groups = []
    current = [order[0]]
    for idx in order[1:]:
        if values[idx] - values[current[-1]] < tol:
            current.append(idx)
        else:
            groups.append(current)
            current = [idx]
    groups.append(current)
    return groups


def _spectrum_matrix(a: JordanElement) -> SpectralDecomposition:
    desc = a.descriptor
    M = jordan.to_complex_matrix(a)
    w, V = np.linalg.eigh(M)
    half = 2 if desc.family == "hermH" else 1
    eigenvalues, idempotents, multiplicities = [], [], []
    for grp in _cluster(w):
        lam = float(np.mean(w[grp]))
        P = V[:, grp] @ V[:, grp].conj().T
        eigenvalues.append(lam)
        idempotents.append(jordan.from_complex_matrix(desc, P))
        multiplicities.append(len(grp) // half)
    return SpectralDecomposition(eigenvalues, idempotents, multiplicities)


def _spectrum_spin(a: JordanElement) -> SpectralDecomposition:
    desc = a.descriptor
    x = a.coords[:-1]
    t = float(a.coords[-1])
    r = float(np.linalg.norm(x))
    if r <= CLUSTER_TOL:
        return SpectralDecomposition([t], [jordan.unit(desc)], [2])
    u = x / (2.0 * r)
    e_minus = JordanElement(desc, np.append(-u, 0.5))
    e_plus = JordanElement(desc, np.append(u, 0.5))
    return SpectralDecomposition([t - r, t + r], [e_minus, e_plus], [1, 1])


def _lagrange_idempotents(a: JordanElement, lams: List[float]):
    """Spectral idempotents of a rank-3 element from its powers."""
    desc = a.descriptor
    one = jordan.unit(desc)
    if len(lams) == 1:
        return [one]
    idems = []
    for i, li in enumerate(lams):
        e = one
        for j, lj in enumerate(lams):
            if j == i:
                continue
            e = jordan.jordan_product(a - lj * one, e) * (1.0 / (li - lj))
        idems.append(e)
    return idems


def _spectrum_albert(a: JordanElement) -> SpectralDecomposition:
    p1 = jordan.jtrace(a)
    a2 = jordan.jordan_product(a, a)
    p2 = jordan.jtrace(a2)
    p3 = jordan.jtrace(jordan.jordan_product(a2, a))
    e1 = p1
    e2 = (p1 * p1 - p2) / 2.0
    e3 = (p1 ** 3 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0
    roots = np.roots([1.0, -e1, e2, -e3])
    w = np.sort(np.real(roots))
    eigenvalues, multiplicities = [], []
    for grp in _cluster(w):
        eigenvalues.append(float(np.mean(w[grp])))
        multiplicities.append(len(grp))
    idems = _lagrange_idempotents(a, eigenvalues)
    return SpectralDecomposition(eigenvalues, idems, multiplicities)


def _embed(desc_sum: AlgebraDescriptor, part_index: int, e: JordanElement) -> JordanElement:
    coords = np.zeros(desc_sum.dim)
    off = sum(p.dim for p in desc_sum.parts[:part_index])
    coords[off:off + e.descriptor.dim] = e.coords
    return JordanElement(desc_sum, coords)


def _spectrum_sum(a: JordanElement) -> SpectralDecomposition:
    desc = a.descriptor
    entries = []  # (eigenvalue, embedded idempotent, multiplicity)
    off = 0
    for idx, part in enumerate(desc.parts):
        sub = JordanElement(part, a.coords[off:off + part.dim])
        dec = spectrum(sub)
        for lam, e, m in zip(dec.eigenvalues, dec.idempotents, dec.multiplicities):
            entries.append((lam, _embed(desc, idx, e), m))
        off += part.dim
    vals = np.array([t[0] for t in entries])
    eigenvalues, idempotents, multiplicities = [], [], []
    for grp in _cluster(vals):
        eigenvalues.append(float(np.mean(vals[grp])))
        e = entries[grp[0]][1]
        m = entries[grp[0]][2]
        for idx in grp[1:]:
            e = e + entries[idx][1]
            m += entries[idx][2]
        idempotents.append(e)
        multiplicities.append(m)
    return SpectralDecomposition(eigenvalues, idempotents, multiplicities)


def spectrum(a: JordanElement) -> SpectralDecomposition:
    fam = a.descriptor.family
    if fam in ("hermR", "hermC", "hermH"):
        return _spectrum_matrix(a)
    if fam == "spin":
        return _spectrum_spin(a)
    if fam == "albert":
        return _spectrum_albert(a)
    return _spectrum_sum(a)


def eigenvalues(a: JordanElement) -> np.ndarray:
    """Distinct spectral points only (no idempotents); cheaper than spectrum()."""
    fam = a.descriptor.family
    if fam in ("hermR", "hermC", "hermH"):
        return np.linalg.eigvalsh(jordan.to_complex_matrix(a))
    if fam == "spin":
        x, t = a.coords[:-1], a.coords[-1]
        r = np.linalg.norm(x)
        return np.array([t - r, t + r])
    if fam == "albert":
        dec = _spectrum_albert(a)
        return np.array(dec.eigenvalues)
    out = []
    off = 0
    for part in a.descriptor.parts:
        out.append(eigenvalues(JordanElement(part, a.coords[off:off + part.dim])))
        off += part.dim
    return np.concatenate(out)


def functional_calculus(a: JordanElement, f: Callable[[float], float]) -> JordanElement:
    """f(a) = sum f(lambda_i) e_i over the spectral decomposition."""
    dec = spectrum(a)
    out = jordan.zero(a.descriptor)
    for lam, e in zip(dec.eigenvalues, dec.idempotents):
        try:
            val = float(f(lam))
        except (ValueError, ZeroDivisionError) as exc:
            raise FunctionDomainError(f"function undefined at eigenvalue {lam}") from exc
        if not np.isfinite(val):
            raise FunctionDomainError(f"function not finite at eigenvalue {lam}")
        out = out + val * e
    return out


def jexp(a: JordanElement) -> JordanElement:
    return functional_calculus(a, np.exp)


def jsqrt(a: JordanElement, tol: float = 1e-9) -> JordanElement:
    """Square root of a positive element; tiny negative eigenvalues clamp to 0."""
    def f(lam):
        if lam < -tol:
            raise FunctionDomainError(f"sqrt undefined at negative eigenvalue {lam}")
        return np.sqrt(max(lam, 0.0))
    return functional_calculus(a, f)


def jabs(a: JordanElement) -> JordanElement:
    return functional_calculus(a, abs)


def jb_norm(a: JordanElement) -> float:
    """Spectral norm: sup |z| over the spectrum."""
    return float(np.max(np.abs(eigenvalues(a))))


def is_positive(a: JordanElement, tol: float = 1e-10) -> bool:
    """Cone membership: all eigenvalues >= -tol."""
    return bool(np.min(eigenvalues(a)) >= -tol)
