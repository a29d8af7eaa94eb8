"""Closed-form rationally extended models and their similarity identities.

Two families:

  - ``radial_extended``: harmonic plus centrifugal core with a rational
    correction, bound states on (0, inf) built on the exceptional
    Laguerre members.
  - ``scarf_extended``: trigonometric Scarf core with a rational
    correction, bound states on one period cell, built on the
    exceptional Jacobi members.

Either family admits an imaginary coordinate shift ``eps`` that makes
the potential complex while (provably, and verified numerically
elsewhere) keeping the spectrum real.  The shift is implemented by the
substitution w = kx + i*eps inside the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import (
    ArgumentError,
    BranchCutError,
    DomainError,
    SingularityError,
)
from .xop import X1Family, x1_laguerre_norm, x1_polynomial

__all__ = [
    "PotentialModel",
    "ShiftOperator",
    "validate_params",
    "potential",
    "energy",
    "wavefunction",
    "apply_rho_shift",
    "quasi_hermiticity_residual",
    "pseudo_hermiticity_residual",
    "pt_symmetry_residual",
]

_FAMILIES = ("radial_extended", "scarf_extended")
_BRANCHES = ("sin", "cos")


@dataclass(frozen=True)
class PotentialModel:
    """Immutable parameter set for one model.

    ``eps = 0`` is the Hermitian case.  ``branch`` selects which
    trigonometric solution the Scarf family uses; the cos branch is the
    sin branch evaluated at kx + pi/2.
    """

    family: str
    a: float
    b: Optional[float] = None
    k: float = 1.0
    eps: float = 0.0
    branch: Optional[str] = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ArgumentError(
                f"unknown family {self.family!r}; expected one of {_FAMILIES}"
            )
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "k", float(self.k))
        object.__setattr__(self, "eps", float(self.eps))
        if self.k == 0.0:
            raise ArgumentError("scale k must be nonzero")
        if self.family == "radial_extended":
            if self.b is not None:
                raise ArgumentError("radial model takes no index b")
            if self.branch is not None:
                raise ArgumentError("radial model has no branch choice")
        else:
            if self.b is None:
                raise ArgumentError("scarf model needs the second index b")
            object.__setattr__(self, "b", float(self.b))
            branch = self.branch if self.branch is not None else "sin"
            if branch not in _BRANCHES:
                raise ArgumentError(
                    f"unknown branch {branch!r}; expected one of {_BRANCHES}"
                )
            object.__setattr__(self, "branch", branch)


def validate_params(m: PotentialModel) -> list:
    """Physics-level parameter diagnostics; an empty list means valid.

    Structural problems (unknown family, k = 0) are rejected earlier at
    construction; this reports the constraints that decide whether the
    model actually has regular normalizable states.
    """
    out = []
    if m.family == "radial_extended":
        if not m.a > 0.0:
            out.append(f"index a must be positive, got a = {m.a:g}")
        elif m.eps != 0.0 and abs(m.eps * m.eps - 4.0 * m.a) <= 1e-12 * 4.0 * m.a:
            out.append(
                f"eps^2 = 4a (eps = {m.eps:g}, a = {m.a:g}) places the "
                "rational term's pole at x = 0 on the real line"
            )
        return out
    if not (m.a > -0.5 and m.b > -0.5):
        out.append(
            f"states are regular only for a, b > -1/2, got ({m.a:g}, {m.b:g})"
        )
    if m.a == m.b:
        out.append("indices must differ (a = b collapses the rational term)")
    if m.eps != 0.0 and m.a != m.b:
        ratio = (m.a + m.b) / abs(m.b - m.a)
        if ratio >= 1.0 and abs(math.cosh(m.eps) - ratio) <= 1e-12 * ratio:
            out.append(
                f"cosh(eps) = (a+b)/|b-a| = {ratio:g} places the rational "
                "term's pole on the real line"
            )
    return out


def _first_bad(xs, mask) -> float:
    flat = np.atleast_1d(np.real(np.asarray(xs)))
    return float(flat[np.atleast_1d(mask)][0])


def potential(m: PotentialModel, x):
    """Potential value(s) at ``x`` (real, or complex for continuations).

    radial, with w = kx + i eps:

      V = k^2 w^2 / 16 + k^2 (a^2 - 1/4) / w^2
          + 4 k^2 / (w^2 + 4a) - 32 a k^2 / (w^2 + 4a)^2

    scarf, with w = kx + i eps (+ pi/2 on the cos branch) and
    D = a + b - (b - a) sin w:

      V = k^2 (2a^2 + 2b^2 - 1)/4 * sec^2 w
          - k^2 (b^2 - a^2)/2 * sec w tan w
          + 2 k^2 (a + b) / D - 8 k^2 a b / D^2

    The result is a float array for eps = 0 and real input, complex
    otherwise.  Singular points raise :class:`SingularityError` naming
    the offending x.
    """
    xs = np.asarray(x)
    scalar = xs.ndim == 0
    want_complex = m.eps != 0.0 or np.iscomplexobj(xs)
    xs = xs.astype(complex if want_complex else float)
    k2 = m.k * m.k
    if m.family == "radial_extended":
        a = m.a
        w = m.k * xs + (1j * m.eps if want_complex else 0.0)
        w2 = w * w
        bad = w == 0.0
        if np.any(bad):
            raise SingularityError(
                f"centrifugal pole at x = {_first_bad(xs, bad):g}"
            )
        den = w2 + 4.0 * a
        bad = den == 0.0
        if np.any(bad):
            raise SingularityError(
                f"rational-term pole at x = {_first_bad(xs, bad):g}"
            )
        out = (
            k2 * w2 / 16.0
            + k2 * (a * a - 0.25) / w2
            + 4.0 * k2 / den
            - 32.0 * a * k2 / (den * den)
        )
    else:
        a, b = m.a, m.b
        off = 0.5 * math.pi if m.branch == "cos" else 0.0
        w = m.k * xs + off + (1j * m.eps if want_complex else 0.0)
        c = np.cos(w)
        bad = c == 0.0
        if np.any(bad):
            raise SingularityError(
                f"sec-type pole at x = {_first_bad(xs, bad):g}"
            )
        s = np.sin(w)
        d = a + b - (b - a) * s
        bad = d == 0.0
        if np.any(bad):
            raise SingularityError(
                f"rational-term pole at x = {_first_bad(xs, bad):g}"
            )
        sec2 = 1.0 / (c * c)
        # the -8ab rational coefficient is pinned by the transformation
        # engine's partial-fraction fit; see the extraction regression test
        out = (
            k2 * (2.0 * a * a + 2.0 * b * b - 1.0) / 4.0 * sec2
            - k2 * (b * b - a * a) / 2.0 * s * sec2
            + 2.0 * k2 * (a + b) / d
            - 8.0 * k2 * a * b / (d * d)
        )
    return out[()] if scalar else out


def energy(m: PotentialModel, n: int) -> float:
    """n-th bound-state energy; independent of ``eps`` by construction.

    radial: k^2 (2n + a - 1) / 2
    scarf:  (k^2 / 4) (2n + a + b - 1)^2
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ArgumentError(f"levels are indexed by integers n >= 1, got {n!r}")
    k2 = m.k * m.k
    if m.family == "radial_extended":
        return k2 * (2.0 * n + m.a - 1.0) / 2.0
    return 0.25 * k2 * (2.0 * n + m.a + m.b - 1.0) ** 2


@lru_cache(maxsize=None)
def _member(kind: str, a: float, b: Optional[float], n: int):
    return x1_polynomial(X1Family(kind, a, b), n)


@lru_cache(maxsize=None)
def _scarf_norm_constant(a: float, b: float, k: float, n: int) -> float:
    """1/sqrt of the squared norm of the unnormalized Hermitian state.

    Computed once per (a, b, k, n) by quadrature over the period cell;
    the closed form publishes the state only up to a constant.
    """
    from .numerics import finite_quadrature, integrate  # deferred: numerics imports us

    p = _member("jacobi", a, b, n)
    half = 0.5 * math.pi / k

    def integrand(x):
        s = np.sin(k * x)
        d = a + b - (b - a) * s
        pn = p(s)
        return (
            np.power(1.0 - s, a + 0.5)
            * np.power(1.0 + s, b + 0.5)
            / (d * d)
            * pn
            * pn
        )

    value = integrate(integrand, finite_quadrature(-half, half))
    return 1.0 / math.sqrt(value)


def _branch_guard(vals, xs, label):
    bad = (vals.real < 0.0) & (vals.imag == 0.0)
    if np.any(bad):
        raise BranchCutError(
            f"{label} lands on the branch cut at x = {_first_bad(xs, bad):g}"
        )


def wavefunction(m: PotentialModel, n: int, x):
    """Normalized bound state psi_n at ``x``; complex-valued.

    radial (z = x + i eps / k, u = k^2 z^2 / 4):

      psi_n = N z^(a + 1/2) exp(-k^2 z^2 / 8) Lhat_n(u) / (k^2 z^2 + 4a),
      N^2 = (n-1)! k^(2a+2) / (2^(2a-3) (a+n) Gamma(a+n-1))

    scarf (w = kx + i eps (+ pi/2 on the cos branch), s = sin w):

      psi_n = C (1-s)^(a/2+1/4) (1+s)^(b/2+1/4) Phat_n(s)
                / (a + b - (b-a) s)

    with C fixed numerically so the Hermitian state has unit norm.

    All fractional powers use the principal branch.  The shifted
    coordinate keeps a fixed-sign imaginary part for either sign of
    ``eps``, so the principal branch agrees with the analytic
    continuation of the Hermitian state; for the scarf family with
    eps != 0 that holds only inside the central cell |kx| < pi/2
    (|kx + pi/2| < pi/2 on the cos branch), and points beyond raise
    :class:`BranchCutError`.  Complex ``x`` is accepted for
    continuation work and skips the real-domain checks.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ArgumentError(f"levels are indexed by integers n >= 1, got {n!r}")
    xs = np.asarray(x)
    scalar = xs.ndim == 0
    complex_input = np.iscomplexobj(xs)
    if m.family == "radial_extended":
        a, k = m.a, m.k
        if not complex_input and m.eps == 0.0 and np.any(xs <= 0.0):
            raise DomainError("Hermitian radial states live on x > 0")
        z = xs.astype(complex) + 1j * m.eps / k
        bad = z == 0.0
        if np.any(bad):
            raise SingularityError(
                f"state has a branch point at x = {_first_bad(xs, bad):g}"
            )
        _branch_guard(z, xs, "shifted coordinate")
        u = 0.25 * k * k * z * z
        den = k * k * z * z + 4.0 * a
        bad = den == 0.0
        if np.any(bad):
            raise SingularityError(
                f"rational-term pole at x = {_first_bad(xs, bad):g}"
            )
        norm = math.sqrt(
            k ** (2.0 * a + 2.0) / (2.0 ** (2.0 * a - 3.0) * x1_laguerre_norm(n, a))
        )
        p = _member("laguerre", a, None, n)
        out = norm * np.power(z, a + 0.5) * np.exp(-0.125 * k * k * z * z) / den * p(u)
    else:
        a, b, k = m.a, m.b, m.k
        if not (a > -0.5 and b > -0.5):
            raise DomainError(
                f"states are regular only for a, b > -1/2, got ({a:g}, {b:g})"
            )
        off = 0.5 * math.pi if m.branch == "cos" else 0.0
        if not complex_input:
            wr = k * xs.astype(float) + off
            half = 0.5 * math.pi
            if m.eps == 0.0:
                if np.any(np.abs(wr) > half * (1.0 + 1e-12)):
                    raise DomainError(
                        "Hermitian scarf states live on the cell "
                        f"|kx{' + pi/2' if off else ''}| <= pi/2"
                    )
            elif np.any(np.abs(wr) >= half):
                raise BranchCutError(
                    "principal powers stop matching the analytic "
                    "continuation beyond the central cell "
                    f"|kx{' + pi/2' if off else ''}| < pi/2"
                )
        w = k * xs.astype(complex) + off + 1j * m.eps
        s = np.sin(w)
        one, two = 1.0 - s, 1.0 + s
        _branch_guard(one, xs, "factor 1 - sin w")
        _branch_guard(two, xs, "factor 1 + sin w")
        d = a + b - (b - a) * s
        bad = d == 0.0
        if np.any(bad):
            raise SingularityError(
                f"rational-term pole at x = {_first_bad(xs, bad):g}"
            )
        p = _member("jacobi", a, b, n)
        out = (
            _scarf_norm_constant(a, b, k, n)
            * np.power(one, 0.5 * a + 0.25)
            * np.power(two, 0.5 * b + 0.25)
            / d
            * p(s)
        )
    return out[()] if scalar else out


# ---------------------------------------------------------------------------
# similarity structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftOperator:
    """The imaginary translation rho = exp((eps/k) p), p = -i d/dx.

    Conjugation by rho moves the argument of an analytic function:
    rho f(x) rho^(-1) = f(x - i eps / k).
    """

    eps: float
    k: float

    def __post_init__(self):
        if float(self.k) == 0.0:
            raise ArgumentError("scale k must be nonzero")
        object.__setattr__(self, "eps", float(self.eps))
        object.__setattr__(self, "k", float(self.k))

    @property
    def shift(self) -> complex:
        return 1j * self.eps / self.k


def apply_rho_shift(s: ShiftOperator, f: Callable, sign: int = 1) -> Callable:
    """Evaluator for rho^sign f rho^(-sign), i.e. x -> f(x - sign i eps/k).

    ``f`` must be analytic in the strip |Im z| <= |eps/k|; that is the
    caller's contract and is not checked here.
    """
    if sign not in (1, -1):
        raise ArgumentError(f"sign must be +1 or -1, got {sign!r}")

    def shifted(x):
        return f(np.asarray(x) - sign * s.shift)

    return shifted


def quasi_hermiticity_residual(m: PotentialModel, grid) -> float:
    """max over the grid of |Vtilde(x - i eps/k) - V(x)|.

    V is the same model with eps = 0; the residual vanishes identically
    when the shifted potential is the analytic continuation it claims
    to be.
    """
    xs = np.asarray(grid, dtype=float)
    shifted = potential(m, xs - 1j * m.eps / m.k)
    base = potential(replace(m, eps=0.0), xs)
    return float(np.max(np.abs(shifted - base)))


def pseudo_hermiticity_residual(m: PotentialModel, grid) -> float:
    """max over the grid of |Vtilde(x - 2 i eps/k) - conj(Vtilde(x))|.

    This is the pointwise form of eta Vtilde eta^(-1) = Vtilde^dagger
    with eta the squared shift operator; it holds by Schwarz reflection
    because the eps = 0 potential is real-analytic.
    """
    xs = np.asarray(grid, dtype=float)
    shifted = potential(m, xs - 2j * m.eps / m.k)
    return float(np.max(np.abs(shifted - np.conj(potential(m, xs)))))


def pt_symmetry_residual(m: PotentialModel, grid) -> float:
    """max over the grid of |conj(Vtilde(-x)) - Vtilde(x)|.

    Zero for the radial family and for the scarf cos branch; the scarf
    sin branch breaks it whenever a != b.
    """
    xs = np.asarray(grid, dtype=float)
    return float(
        np.max(np.abs(np.conj(potential(m, -xs)) - potential(m, xs)))
    )
