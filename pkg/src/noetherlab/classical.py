"""Polynomial Poisson algebra on R^2n and Hamiltonian flows.

Observables are multivariate polynomials in (q_1..q_n, p_1..p_n) with
exact rational coefficients, so Poisson brackets are computed symbolically
and the zero test {f, g} = 0 is decidable, with no numerical false
positives in the Noether verdict.  The bracket follows the convention

    {f, g} = sum_i  df/dp_i dg/dq_i - df/dq_i dg/dp_i

and flows integrate dq/dt = dH/dp, dp/dt = -dH/dq, so that dF/dt = {H, F}
along trajectories.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .noether import NoetherReport

BLOWUP_THRESHOLD = 1e12

Exponents = Tuple[int, ...]


class PolynomialObservable:
    """Polynomial in (q_1..q_n, p_1..p_n); exponent tuples are (q..., p...)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Exponents, Fraction] = None):
        if n < 1:
            raise ValueError("need at least one degree of freedom")
        self.n = n
        clean: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != 2 * n:
                raise ValueError(f"exponent tuple must have length {2 * n}")
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c != 0:
                clean[tuple(int(e) for e in exps)] = clean.get(tuple(exps), Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # construction helpers -------------------------------------------------
    @staticmethod
    def constant(n: int, value) -> "PolynomialObservable":
        return PolynomialObservable(n, {(0,) * (2 * n): Fraction(value)})

    @staticmethod
    def q(i: int, n: int) -> "PolynomialObservable":
        e = [0] * (2 * n)
        e[i - 1] = 1
        return PolynomialObservable(n, {tuple(e): Fraction(1)})

    @staticmethod
    def p(i: int, n: int) -> "PolynomialObservable":
        e = [0] * (2 * n)
        e[n + i - 1] = 1
        return PolynomialObservable(n, {tuple(e): Fraction(1)})

    # algebra ---------------------------------------------------------------
    def _check(self, other):
        if self.n != other.n:
            raise ValueError("polynomials have different degrees of freedom")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return PolynomialObservable(self.n, terms)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, PolynomialObservable):
            self._check(other)
            terms: Dict[Exponents, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
            return PolynomialObservable(self.n, terms)
        scale = other if isinstance(other, Fraction) else Fraction(other)
        return PolynomialObservable(self.n, {e: scale * c for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PolynomialObservable) and \
            self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, var: int) -> "PolynomialObservable":
        """Partial derivative with respect to coordinate index var (0-based)."""
        terms: Dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            new = list(e)
            new[var] -= 1
            terms[tuple(new)] = terms.get(tuple(new), Fraction(0)) + c * e[var]
        return PolynomialObservable(self.n, terms)

    def evaluate(self, point: Sequence[float]) -> float:
        x = np.asarray(point, dtype=float)
        if x.shape != (2 * self.n,):
            raise ValueError(f"point must have {2 * self.n} coordinates")
        total = 0.0
        for e, c in self.terms.items():
            total += float(c) * float(np.prod(x ** np.array(e)))
        return total

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"q{i + 1}" for i in range(self.n)] + [f"p{i + 1}" for i in range(self.n)]
        parts = []
        for e, c in sorted(self.terms.items()):
            factors = [str(c)] if c != 1 or not any(e) else ([] if any(e) else ["1"])
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors) if factors else str(c))
        return " + ".join(parts)


def poisson_bracket(f: PolynomialObservable,
                    g: PolynomialObservable) -> PolynomialObservable:
    """Exact symbolic {f, g} = sum df/dp dg/dq - df/dq dg/dp."""
    f._check(g)
    n = f.n
    out = PolynomialObservable(n, {})
    for i in range(n):
        out = out + f.diff(n + i) * g.diff(i) - f.diff(i) * g.diff(n + i)
    return out


def parse_polynomial(text: str, n: int = None) -> PolynomialObservable:
    """Parse the plain-text grammar, e.g. ``3*q1^2*p2 - 0.5*p1``."""
    src = text.replace("−", "-").strip()
    if not src:
        raise ValueError("empty polynomial")
    # split into signed monomials at top level
    monomials = []
    current = ""
    for ch in src:
        if ch in "+-" and current.strip() and not current.rstrip().endswith(("^", "*", "+", "-")):
            monomials.append(current)
            current = ch
        else:
            current += ch
    monomials.append(current)
    # infer the number of degrees of freedom if not given
    indices = [int(m) for m in re.findall(r"[qp](\d+)", src)]
    inferred = max(indices) if indices else 1
    if n is None:
        n = inferred
    elif indices and inferred > n:
        raise ValueError(f"variable index {inferred} exceeds n = {n}")
    result = PolynomialObservable(n, {})
    var_re = re.compile(r"^([qp])(\d+)(?:\^(\d+))?$")
    for mono in monomials:
        mono = mono.strip()
        sign = Fraction(1)
        while mono and mono[0] in "+-":
            if mono[0] == "-":
                sign = -sign
            mono = mono[1:].strip()
        if not mono:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * (2 * n)
        for factor in (p.strip() for p in mono.split("*")):
            m = var_re.match(factor)
            if m:
                kind, idx, power = m.group(1), int(m.group(2)), int(m.group(3) or 1)
                if not 1 <= idx <= n:
                    raise ValueError(f"variable index out of range in {factor!r}")
                pos = (idx - 1) if kind == "q" else (n + idx - 1)
                exps[pos] += power
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError as exc:
                    raise ValueError(f"cannot parse factor {factor!r}") from exc
        result = result + PolynomialObservable(n, {tuple(exps): coeff})
    return result


def _term_arrays(polys: Sequence[PolynomialObservable], width: int):
    """Stack the terms of several polynomials into flat arrays so a whole
    vector of values comes out of one numpy pass."""
    exps, coeffs, idx = [], [], []
    for k, poly in enumerate(polys):
        for e, c in poly.terms.items():
            exps.append(e)
            coeffs.append(float(c))
            idx.append(k)
    if not exps:
        exps = [(0,) * width]
        coeffs = [0.0]
        idx = [0]
    return (np.array(exps, dtype=float), np.array(coeffs),
            np.array(idx, dtype=np.intp))


def _evaluate_batch(poly: PolynomialObservable, X: np.ndarray) -> np.ndarray:
    """Evaluate poly at every row of X, shape (m, 2n) -> (m,)."""
    E, C, _ = _term_arrays([poly], 2 * poly.n)
    return np.prod(X[:, None, :] ** E[None, :, :], axis=2) @ C


@dataclass
class PhaseTrajectory:
    samples: List[Tuple[float, np.ndarray]]
    step_size: float
    method: str = "rk4"
    blown_up: bool = False

    def final(self) -> np.ndarray:
        return self.samples[-1][1]

    def to_json_rows(self) -> list:
        return [{"t": t, "state": x.tolist()} for t, x in self.samples]


def hamiltonian_vector_flow(H: PolynomialObservable, x0: Sequence[float],
                            t_end: float, steps: int) -> PhaseTrajectory:
    """Fixed-step RK4 for dq/dt = dH/dp, dp/dt = -dH/dq."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = H.n
    field = [H.diff(n + i) for i in range(n)] + [-H.diff(i) for i in range(n)]
    E, C, idx = _term_arrays(field, 2 * n)

    def rhs(x):
        vals = C * np.prod(x[None, :] ** E, axis=1)
        return np.bincount(idx, weights=vals, minlength=2 * n)

    h = t_end / steps
    x = np.asarray(x0, dtype=float)
    if x.shape != (2 * n,):
        raise ValueError(f"initial point must have {2 * n} coordinates")
    samples = [(0.0, x.copy())]
    blown_up = False
    for k in range(steps):
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h * k2)
        k4 = rhs(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > BLOWUP_THRESHOLD:
            blown_up = True
            break
        samples.append(((k + 1) * h, x.copy()))
    return PhaseTrajectory(samples, h, "rk4", blown_up)


def observable_along_flow(g: PolynomialObservable,
                          traj: PhaseTrajectory) -> List[Tuple[float, float]]:
    """Pointwise evaluation of g along a trajectory."""
    X = np.array([x for _, x in traj.samples])
    vals = _evaluate_batch(g, X)
    return [(t, float(v)) for (t, _), v in zip(traj.samples, vals)]


def classical_noether_check(f: PolynomialObservable, g: PolynomialObservable,
                            sample_points: Sequence[Sequence[float]],
                            t_end: float = 2.0, steps: int = 400,
                            tol: float = 1e-6) -> NoetherReport:
    """Noether equivalence for a classical pair: symbolic bracket vs flows.

    The flow verdicts integrate trajectories from every sample point and
    test constancy of the other observable; trajectories that blow up are
    reported as indeterminate and excluded.
    """
    bracket = poisson_bracket(f, g)
    if bracket.is_zero():
        bracket_norm = 0.0
    else:
        bracket_norm = max(abs(bracket.evaluate(x)) for x in sample_points)

    def fixes(hamiltonian, observable):
        worst, excluded = 0.0, 0
        for x0 in sample_points:
            for sgn in (1.0, -1.0):
                traj = hamiltonian_vector_flow(hamiltonian, x0, sgn * t_end, steps)
                if traj.blown_up:
                    excluded += 1
                    continue
                vals = [v for _, v in observable_along_flow(observable, traj)]
                worst = max(worst, max(abs(v - vals[0]) for v in vals))
        return worst < tol, excluded

    a_fixes_b, excl1 = fixes(f, g)
    b_fixes_a, excl2 = fixes(g, f)
    sc_a, excl3 = fixes(f, f)
    sc_b, excl4 = fixes(g, g)
    consistent = (a_fixes_b == b_fixes_a == (bracket_norm < tol))
    return NoetherReport(bracket_norm, a_fixes_b, b_fixes_a, sc_a, sc_b,
                         consistent, [t_end], tol,
                         excluded_samples=excl1 + excl2 + excl3 + excl4)
