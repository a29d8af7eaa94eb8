"""Point-canonical-transformation engine.

Substituting psi = f(x) F(g(x)) into the Schroedinger equation, where F
solves F'' + Q(g) F' + R(g) F = 0, gives

    E - V(x) = g'''/(2 g') - (3/4)(g''/g')^2
               + g'^2 (R - (1/2) dQ/dg - (1/4) Q^2)

and f = g'^(-1/2) exp((1/2) Integral Q dg).  This module evaluates both
for the maps used by the solvable models and separates the x-independent
energy from the potential mechanically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    ArgumentError,
    ConsistencyError,
    ConvergenceError,
    SingularityError,
)
from .xop import OdeCoefficients, X1Family, x1_ode_coefficients

__all__ = [
    "GMap",
    "pct_e_minus_v",
    "pct_wavefactor",
    "pct_extract_potential",
    "PotentialExtraction",
    "extract_potential_report",
]


@dataclass(frozen=True)
class GMap:
    """Change of variable g with analytic derivatives up to third order.

    kinds:
      - ``quadratic``: g(x) = (kx + d)^2 / 4, so g'^2 / g = k^2
      - ``sine``:      g(x) = sin(kx + d),    so g'^2 / (1 - g^2) = k^2
      - ``cosine``:    g(x) = cos(kx + d), same constraint as sine

    ``d`` must be purely real (a plain coordinate shift) or purely
    imaginary (the non-Hermitian deformation); anything mixed is
    rejected, since no model here uses it.
    """

    kind: str
    k: float
    d: complex = 0.0

    def __post_init__(self):
        if self.kind not in ("quadratic", "sine", "cosine"):
            raise ArgumentError(f"unknown map kind {self.kind!r}")
        k = float(self.k)
        if k == 0.0:
            raise ArgumentError("map scale k must be nonzero")
        object.__setattr__(self, "k", k)
        d = complex(self.d)
        if d.real != 0.0 and d.imag != 0.0:
            raise ArgumentError(
                f"shift d must be purely real or purely imaginary, got {d}"
            )
        object.__setattr__(self, "d", d)

    @property
    def is_complex(self) -> bool:
        return self.d.imag != 0.0

    def _w(self, x):
        shift = self.d if self.is_complex else self.d.real
        return self.k * np.asarray(x) + shift

    def g(self, x):
        w = self._w(x)
        if self.kind == "quadratic":
            return 0.25 * w * w
        if self.kind == "sine":
            return np.sin(w)
        return np.cos(w)

    def dg(self, x):
        w = self._w(x)
        if self.kind == "quadratic":
            return 0.5 * self.k * w
        if self.kind == "sine":
            return self.k * np.cos(w)
        return -self.k * np.sin(w)

    def d2g(self, x):
        w = self._w(x)
        k2 = self.k * self.k
        if self.kind == "quadratic":
            return 0.5 * k2 * np.ones_like(w)
        if self.kind == "sine":
            return -k2 * np.sin(w)
        return -k2 * np.cos(w)

    def d3g(self, x):
        w = self._w(x)
        k3 = self.k ** 3
        if self.kind == "quadratic":
            return np.zeros_like(w)
        if self.kind == "sine":
            return -k3 * np.cos(w)
        return k3 * np.sin(w)


def _first_bad(x, mask) -> float:
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    return float(xs[np.atleast_1d(mask)][0])


def pct_e_minus_v(gm: GMap, ode: OdeCoefficients, x):
    """E - V(x) for the member whose ODE data is ``ode``.

    For fixed member index n the result equals E_n - V(x), with the split
    into constant and x-dependent parts left to
    :func:`pct_extract_potential`.
    """
    xs = np.asarray(x)
    gv = gm.g(xs)
    dgv = gm.dg(xs)
    bad = dgv == 0.0
    if np.any(bad):
        raise SingularityError(f"g' vanishes at x = {_first_bad(xs, bad):g}")
    for s in ode.singular_points:
        bad = gv == s
        if np.any(bad):
            raise SingularityError(
                f"g(x) hits the ODE singular point {s:g} at "
                f"x = {_first_bad(xs, bad):g}"
            )
    out = (
        gm.d3g(xs) / (2.0 * dgv)
        - 0.75 * (gm.d2g(xs) / dgv) ** 2
        + dgv * dgv * (ode.r(gv) - 0.5 * ode.dq(gv) - 0.25 * ode.q(gv) ** 2)
    )
    if not np.all(np.isfinite(np.atleast_1d(out))):
        bad = ~np.isfinite(np.atleast_1d(out))
        raise SingularityError(
            f"transformation not finite at x = {_first_bad(xs, bad):g}"
        )
    return out if np.ndim(x) else complex(out) if gm.is_complex else float(out)


# reference points g0 for the Q antiderivative, one per family; the
# global constant exp((1/2) Integral_{g0}) is absorbed into normalization
_G0 = {"laguerre": 1.0, "jacobi": 0.0}


def _segment_clearance(z0: complex, z1: complex, s: complex) -> float:
    """Distance from point s to the straight segment [z0, z1]."""
    delta = z1 - z0
    denom = abs(delta) ** 2
    if denom == 0.0:
        return abs(s - z0)
    t = ((s - z0) * delta.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(s - (z0 + t * delta))


def _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    if depth <= 0:
        raise ConvergenceError("path integral of Q did not converge")
    return _adaptive_simpson(
        f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1
    ) + _adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)


def _integrate_q(ode: OdeCoefficients, z0: complex, z1: complex) -> complex:
    delta = z1 - z0
    if delta == 0.0:
        return 0.0 + 0.0j
    for s in ode.singular_points:
        if _segment_clearance(z0, z1, s) <= 1e-12 * max(1.0, abs(delta)):
            raise SingularityError(
                f"integration path from {z0:g} to {z1:g} crosses the ODE "
                f"singular point {s:g}"
            )

    def f(t):
        return complex(ode.q(z0 + t * delta)) * delta

    fa, fm, fb = f(0.0), f(0.5), f(1.0)
    whole = (fa + 4.0 * fm + fb) / 6.0
    tol = 1e-10 * max(1.0, abs(whole))
    return _adaptive_simpson(f, 0.0, fa, 1.0, fb, 0.5, fm, whole, tol, 40)


def pct_wavefactor(
    gm: GMap,
    ode: OdeCoefficients,
    x,
    antiderivative_of_q: Optional[Callable] = None,
) -> complex:
    """Wavefunction prefactor f(x) = g'^(-1/2) exp((1/2) Integral Q dg).

    Defined up to one global constant.  The antiderivative of Q, when not
    supplied, is computed by adaptive quadrature along the straight path
    from the family's reference point (1 for Laguerre, 0 for Jacobi) to
    g(x); a path through an ODE singular point raises
    :class:`SingularityError`.
    """
    if np.ndim(x):
        return np.array(
            [pct_wavefactor(gm, ode, xi, antiderivative_of_q) for xi in x]
        )
    dgv = complex(gm.dg(x))
    if dgv == 0.0:
        raise SingularityError(f"g' vanishes at x = {float(np.real(x)):g}")
    gv = complex(gm.g(x))
    if antiderivative_of_q is not None:
        integral = complex(antiderivative_of_q(gv))
    else:
        integral = _integrate_q(ode, complex(_G0[ode.family.kind]), gv)
    return dgv ** -0.5 * cmath.exp(0.5 * integral)


# ---------------------------------------------------------------------------
# separating energy from potential
# ---------------------------------------------------------------------------


def _family_basis(family: X1Family):
    """Rational basis spanning the x-dependent part of E - V over g.

    Partial fractions of the transformed coefficient combination leave
    poles only at the ODE's singular points (orders <= 2) plus, for the
    quadratic map, a term linear in g.  The constant function is excluded
    on purpose: it is the energy, and keeping it out of the basis is what
    makes the energy/potential split unique.
    """
    if family.kind == "laguerre":
        a = family.a
        funcs = (
            lambda g: g,
            lambda g: 1.0 / g,
            lambda g: 1.0 / g ** 2,
            lambda g: 1.0 / (g + a),
            lambda g: 1.0 / (g + a) ** 2,
        )
        names = ("g", "1/g", "1/g^2", "1/(g+a)", "1/(g+a)^2")
        return funcs, names
    a, b = family.a, family.b
    funcs = (
        lambda g: 1.0 / (1.0 - g),
        lambda g: 1.0 / (1.0 - g) ** 2,
        lambda g: 1.0 / (1.0 + g),
        lambda g: 1.0 / (1.0 + g) ** 2,
        lambda g: 1.0 / (a + b - (b - a) * g),
        lambda g: 1.0 / (a + b - (b - a) * g) ** 2,
    )
    names = ("1/(1-g)", "1/(1-g)^2", "1/(1+g)", "1/(1+g)^2", "1/D", "1/D^2")
    return funcs, names


@dataclass(frozen=True)
class PotentialExtraction:
    """Result of separating E_n from V(x) on a grid.

    ``term_coefficients[i]`` multiplies the basis function named
    ``term_names[i]`` in V(g); ``D`` abbreviates a + b - (b - a) g.
    """

    v_values: np.ndarray
    energies: tuple
    term_names: tuple
    term_coefficients: tuple
    dw_spread: float
    fit_residual: float

    @property
    def terms(self) -> dict:
        return dict(zip(self.term_names, self.term_coefficients))


def extract_potential_report(
    gm: GMap,
    family: X1Family,
    n_pair: Sequence[int],
    grid: Sequence[float],
) -> PotentialExtraction:
    """Like :func:`pct_extract_potential` but keeps the fitted rational
    coefficients of V for inspection."""
    n1, n2 = n_pair
    if n1 == n2:
        raise ArgumentError("need two distinct member indices")
    xs = np.asarray(grid, dtype=float)
    if xs.size < 4:
        raise ArgumentError("grid too small to separate energy from potential")
    ode1 = x1_ode_coefficients(family, n1)
    ode2 = x1_ode_coefficients(family, n2)
    w1 = np.atleast_1d(pct_e_minus_v(gm, ode1, xs))
    w2 = np.atleast_1d(pct_e_minus_v(gm, ode2, xs))

    # W_{n1} - W_{n2} = E_{n1} - E_{n2} must be x-independent; a spread
    # here means the map does not linearize this family's n dependence.
    dw = w1 - w2
    mean = complex(np.mean(dw))
    spread = float(np.max(np.abs(dw - mean)))
    if spread > 1e-9 * abs(mean):
        raise ConsistencyError(
            f"W_{n1} - W_{n2} varies by {spread:.3e} across the grid "
            f"(mean {mean:.6g}); the map does not match this family"
        )

    funcs, names = _family_basis(family)
    gv = gm.g(xs)
    dtype = complex if gm.is_complex else float
    ncols = 2 + len(funcs)
    m = np.zeros((2 * xs.size, ncols), dtype=dtype)
    m[: xs.size, 0] = 1.0
    m[xs.size :, 1] = 1.0
    for j, fn in enumerate(funcs):
        col = fn(gv)
        m[: xs.size, 2 + j] = -col
        m[xs.size :, 2 + j] = -col
    rhs = np.concatenate([w1, w2]).astype(dtype)
    sol, *_ = np.linalg.lstsq(m, rhs, rcond=None)
    resid = float(np.max(np.abs(m @ sol - rhs)))
    scale = float(np.max(np.abs(rhs)))
    if resid > 1e-9 * max(scale, 1.0):
        raise ConsistencyError(
            f"transformed coefficients leave residual {resid:.3e} outside "
            "the family's rational basis"
        )
    e1, e2 = sol[0], sol[1]
    if not gm.is_complex:
        e1, e2 = float(e1), float(e2)
    v = e1 - w1
    return PotentialExtraction(
        v_values=v,
        energies=(e1, e2),
        term_names=names,
        term_coefficients=tuple(sol[2:]),
        dw_spread=spread,
        fit_residual=resid,
    )


def pct_extract_potential(
    gm: GMap,
    family: X1Family,
    n_pair: Sequence[int],
    grid: Sequence[float],
):
    """Split E_n - V(x) into constants E_{n1}, E_{n2} and pointwise V.

    The split is a joint linear fit of both members' E - V values against
    the constant (energy) plus the family's rational basis in g
    (potential); see :func:`extract_potential_report` for the fitted
    coefficients.  Returns ``(V values on the grid, E_{n1}, E_{n2})``.
    """
    rep = extract_potential_report(gm, family, n_pair, grid)
    return rep.v_values, rep.energies[0], rep.energies[1]
