"""Degree-one exceptional Laguerre and Jacobi families.

Both families start at degree one and stay complete in their weighted
L2 spaces.  Members are constructed from their second-order ODEs as the
null space of a coefficient matrix, not from classical-polynomial
identities, so the ODE data here is the single source of truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ArgumentError, ConstructionError, SingularityError
from .polycore import Polynomial, classical_jacobi, gamma

__all__ = [
    "X1Family",
    "OdeCoefficients",
    "x1_ode_coefficients",
    "x1_polynomial",
    "x1_weight",
    "x1_laguerre_norm",
]


@dataclass(frozen=True)
class X1Family:
    """Parameter bundle for one exceptional family.

    ``kind`` is ``"laguerre"`` (index ``a > 0``) or ``"jacobi"``
    (indices ``a, b > -1`` with ``a != b``; equality collapses the
    rational part of the ODE and no degree-one family exists).
    """

    kind: str
    a: float
    b: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("laguerre", "jacobi"):
            raise ArgumentError(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "a", float(self.a))
        if self.kind == "laguerre":
            if self.b is not None:
                raise ArgumentError("laguerre family takes no second index")
            if not self.a > 0.0:
                raise ArgumentError(f"laguerre family needs a > 0, got a = {self.a:g}")
        else:
            if self.b is None:
                raise ArgumentError("jacobi family needs a second index b")
            object.__setattr__(self, "b", float(self.b))
            if not (self.a > -1.0 and self.b > -1.0):
                raise ArgumentError(
                    f"jacobi family needs a, b > -1, got ({self.a:g}, {self.b:g})"
                )
            if self.a == self.b:
                raise ArgumentError("jacobi family needs a != b")


@dataclass(frozen=True)
class OdeCoefficients:
    """First- and zeroth-order coefficients of ``y'' + q y' + r y = 0``.

    ``q`` and ``r`` are vectorized evaluators in the polynomial variable,
    ``dq`` is the analytic derivative of ``q``, and ``singular_points``
    lists the finite poles of the rational coefficients.  ``r`` carries
    the member index ``n`` of the eigenvalue term.
    """

    family: X1Family
    n: int
    q: Callable
    dq: Callable
    r: Callable
    singular_points: tuple[float, ...]


def _check_member_index(n) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ArgumentError(
            f"family members are indexed by integers n >= 1, got {n!r}"
        )


def x1_ode_coefficients(family: X1Family, n: int) -> OdeCoefficients:
    """ODE data for the degree-``n`` member of ``family``.

    Laguerre, in the variable ``g`` on (0, inf):

    ``q(g) = -(g - a)(g + a + 1) / (g (g + a))``
    ``r(g) = (g - a) / (g (g + a)) + (n - 1) / g``

    Jacobi, in ``g`` on (-1, 1), writing ``T = (b - a) g - (a + b)``:

    ``q(g) = -((a + b + 2) g + a - b) / (1 - g^2) - 2 (b - a) / T``
    ``r(g) = -((b - a) g - (n + a + b)(n - 1)) / (1 - g^2) - (a - b)^2 / T``
    """
    _check_member_index(n)
    if family.kind == "laguerre":
        a = family.a

        def q(g):
            return -(g - a) * (g + a + 1.0) / (g * (g + a))

        def dq(g):
            # quotient rule on q = -num/den with num = g^2 + g - a(a+1),
            # den = g^2 + a g
            num = g * g + g - a * (a + 1.0)
            den = g * (g + a)
            dnum = 2.0 * g + 1.0
            dden = 2.0 * g + a
            return -(dnum * den - num * dden) / (den * den)

        def r(g):
            return (g - a) / (g * (g + a)) + (n - 1.0) / g

        return OdeCoefficients(family, int(n), q, dq, r, (0.0, -a))

    a, b = family.a, family.b

    def q(g):
        t = (b - a) * g - (a + b)
        return -((a + b + 2.0) * g + a - b) / (1.0 - g * g) - 2.0 * (b - a) / t

    def dq(g):
        t = (b - a) * g - (a + b)
        first = -((a + b + 2.0) * (1.0 + g * g) + 2.0 * (a - b) * g) / (
            (1.0 - g * g) ** 2
        )
        return first + 2.0 * (b - a) ** 2 / (t * t)

    def r(g):
        t = (b - a) * g - (a + b)
        ev = (n + a + b) * (n - 1.0)
        return -((b - a) * g - ev) / (1.0 - g * g) - (a - b) ** 2 / t

    return OdeCoefficients(
        family, int(n), q, dq, r, (1.0, -1.0, (a + b) / (b - a))
    )


# ---------------------------------------------------------------------------
# member construction
# ---------------------------------------------------------------------------

_NULL_TOL = 1e-10  # relative singular-value threshold for the null space


def _cleared_ode_polys(family: X1Family, n: int):
    """Coefficients A, B, C of A y'' + B y' + C y = 0 after clearing
    denominators of q and r (ascending arrays)."""
    if family.kind == "laguerre":
        a = family.a
        # multiply through by g (g + a)
        A = np.array([0.0, a, 1.0])
        B = np.array([a * (a + 1.0), -1.0, -1.0])
        C = np.array([a * (n - 2.0), float(n)])
        return A, B, C
    a, b = family.a, family.b
    # multiply through by (1 - g^2) ((b - a) g - (a + b))
    ev = (n + a + b) * (n - 1.0)
    A = np.array([-(a + b), b - a, a + b, -(b - a)])
    B = np.array(
        [
            (a - b) * (a + b + 2.0),
            (b - a) ** 2 + (a + b) * (a + b + 2.0),
            -(b - a) * (a + b),
        ]
    )
    C = np.array([-ev * (a + b) - (a - b) ** 2, (b - a) * (a + b + ev)])
    return A, B, C


def _ode_matrix(A, B, C, n: int) -> np.ndarray:
    """Map from monomial coefficients c_0..c_n of y to the coefficients of
    A y'' + B y' + C y, one column per c_j."""
    rows = n + 2
    m = np.zeros((rows, n + 1))

    def add(col, poly, shift):
        for i, c in enumerate(poly):
            if 0 <= i + shift < rows:
                m[i + shift, col] += c

    for j in range(n + 1):
        if j >= 2:
            add(j, A * (j * (j - 1)), j - 2)
        if j >= 1:
            add(j, B * j, j - 1)
        add(j, C, j)
    return m


def x1_polynomial(family: X1Family, n: int) -> Polynomial:
    """Degree-``n`` member of the family, built from its ODE.

    The cleared ODE maps the ``n + 1`` monomial coefficients linearly to
    the residual's coefficients; the member spans the one-dimensional null
    space of that matrix.  The null direction comes from an SVD (singular
    values below ``1e-10 * s_max`` count as zero); anything but exactly one
    null direction raises :class:`ConstructionError`.

    Normalization: Laguerre members get leading coefficient
    ``(-1)^n / (n - 1)!``; Jacobi members get ``-1/2`` times the leading
    coefficient of the classical ``P_{n-1}^(a,b)``.  Both conventions
    reproduce the closed-form degree-1 and degree-2 members and the
    quadrature norms of the family.
    """
    _check_member_index(n)
    n = int(n)
    A, B, C = _cleared_ode_polys(family, n)
    m = _ode_matrix(A, B, C, n)
    _, s, vt = np.linalg.svd(m)
    if s[-1] > _NULL_TOL * s[0]:
        raise ConstructionError(
            f"{family.kind} ODE has no degree-{n} polynomial null vector "
            f"(smallest singular value {s[-1]:.3e} vs scale {s[0]:.3e})"
        )
    if len(s) >= 2 and s[-2] <= _NULL_TOL * s[0]:
        raise ConstructionError(
            f"{family.kind} ODE null space is not one-dimensional at n = {n}"
        )
    v = vt[-1]
    if abs(v[-1]) <= _NULL_TOL * np.max(np.abs(v)):
        raise ConstructionError(
            f"{family.kind} null vector has degree below {n}"
        )
    if family.kind == "laguerre":
        lead = (-1.0) ** n / math.factorial(n - 1)
    else:
        lead = -0.5 * classical_jacobi(n - 1, family.a, family.b).coeffs[-1]
    v = v * (lead / v[-1])
    resid = m @ v
    scale = np.max(np.abs(m)) * np.max(np.abs(v))
    if np.max(np.abs(resid)) > 1e-10 * scale:
        raise ConstructionError(
            f"cleared-ODE residual {np.max(np.abs(resid)):.3e} exceeds "
            f"1e-10 of scale {scale:.3e}"
        )
    return Polynomial(tuple(v))


# ---------------------------------------------------------------------------
# weights and norms
# ---------------------------------------------------------------------------


def x1_weight(family: X1Family) -> Callable:
    """Orthogonality weight of the family as a vectorized evaluator.

    Laguerre, on (0, inf):

    ``W(x) = exp(-x) x^a / (x + a)^2``

    Jacobi, on (-1, 1):

    ``W(u) = (1 - u)^a (1 + u)^b / (a + b - (b - a) u)^2``

    The Jacobi form follows from substituting ``u = sin(k x)`` in the
    bound-state orthogonality integral of the trigonometric model: with
    states proportional to
    ``(1 - u)^(a/2 + 1/4) (1 + u)^(b/2 + 1/4) / (a + b - (b - a) u)``
    times a member, ``dx = du / (k sqrt(1 - u^2))`` cancels the quarter
    powers and leaves the weight above (up to the constant 1/k).

    For indices of mixed sign the rational denominator has its double
    pole inside (-1, 1); evaluating there raises
    :class:`SingularityError`.
    """
    if family.kind == "laguerre":
        a = family.a

        def weight(x):
            x = np.asarray(x, dtype=float)
            den = x + a
            if np.any(den == 0.0):
                raise SingularityError(f"weight pole at x = {-a:g}")
            out = np.exp(-x) * np.power(x, a) / (den * den)
            return out if out.ndim else out[()]

        return weight

    a, b = family.a, family.b

    def weight(u):
        u = np.asarray(u, dtype=float)
        den = a + b - (b - a) * u
        if np.any(den == 0.0):
            raise SingularityError(
                f"weight pole at u = {(a + b) / (b - a):g}"
            )
        out = np.power(1.0 - u, a) * np.power(1.0 + u, b) / (den * den)
        return out if out.ndim else out[()]

    return weight


def x1_laguerre_norm(n: int, a: float) -> float:
    """Squared weighted norm of the degree-``n`` exceptional Laguerre member.

    ``(a + n) * gamma(a + n - 1) / (n - 1)!`` for ``a > 0``, ``n >= 1``.
    """
    _check_member_index(n)
    a = float(a)
    if not a > 0.0:
        raise ArgumentError(f"norm needs a > 0, got a = {a:g}")
    return (a + n) * gamma(a + n - 1.0) / math.factorial(n - 1)
