"""
Thurston norm, fibered cones and stretch factors on H^1(M, R) = R^2.

Classes are written phi = (a, b) with phi(t) = a and phi(x) = phi(y) = phi(z) = b.
The norm is ||phi||_T = max(|2a|, |2b|); its unit ball is the square with
vertices (±1/2, ±1/2) and all four faces are fibered. F = {1/2} × [-1/2, 1/2]
is the face whose cone holds the canonical class (1, 0).

The Teichmüller polynomial is taken as given data over the lattice basis
([t], [x]); the monomial u sits at (0, 1), so phi(u) = b. That placement is
the one that reproduces k^2 - 3k + 1 at (1, 0) and k^4 - k^3 - k^2 - k + 1
at (2, 1).
"""

import math
from enum import Enum
from functools import lru_cache
from fractions import Fraction

from ..models.classes import CohomologyClass
from ..models.polynomials import IntPolynomial, TeichPolynomial
from .config import DEFAULT_TOLERANCE
from .exceptions import (
    FibernormValidationError,
    NegativeExponentError,
    NoRootError,
)

# Theta(t, u) = 1 - t(1 + u + u^-1) + t^2
CANONICAL_THETA = TeichPolynomial.from_mapping({
    (0, 0): 1,
    (1, 0): -1,
    (1, 1): -1,
    (1, -1): -1,
    (2, 0): 1,
})

# Scan points are upper ** (RATIO ** m): equal relative steps in log x, so
# roots close to 1 get the same resolution as large ones.
ROOT_SCAN_RATIO = 1.0 - 1.0 / 128
ROOT_SCAN_FLOOR = 1e-12


class Face(str, Enum):
    """Faces of the unit norm ball; every one of them is fibered."""
    F = "F"              # a = 1/2
    MINUS_F = "-F"       # a = -1/2
    G = "G"              # b = 1/2
    MINUS_G = "-G"       # b = -1/2


def thurston_norm(phi: CohomologyClass) -> int:
    return max(abs(2 * phi.a), abs(2 * phi.b))


def is_primitive(phi: CohomologyClass) -> bool:
    """Coordinates coprime and not both zero."""
    return math.gcd(phi.a, phi.b) == 1


def is_fibered(phi: CohomologyClass) -> bool:
    """In the open cone over some face: nonzero and off the corner rays |a| = |b|."""
    return not phi.is_zero() and abs(phi.a) != abs(phi.b)


def in_cone_over_F(phi: CohomologyClass) -> bool:
    return phi.a > 0 and phi.a > abs(phi.b)


def fibered_face(phi: CohomologyClass) -> Face | None:
    """Face whose open cone contains phi, or None on corner rays and at zero."""
    if not is_fibered(phi):
        return None
    if abs(phi.a) > abs(phi.b):
        return Face.F if phi.a > 0 else Face.MINUS_F
    return Face.G if phi.b > 0 else Face.MINUS_G


def fiber_rank(phi: CohomologyClass) -> int:
    """Rank of the free fiber group, ||phi||_T + 1."""
    if not is_fibered(phi):
        raise FibernormValidationError(f"{phi} is not a fibered class")
    return thurston_norm(phi) + 1


def unit_ball_vertices() -> list[tuple[Fraction, Fraction]]:
    """Corners of {||phi||_T <= 1}, counter-clockwise from (1/2, 1/2)."""
    half = Fraction(1, 2)
    return [(half, half), (-half, half), (-half, -half), (half, -half)]


def normalize_to_face(phi: CohomologyClass) -> tuple[Fraction, Fraction]:
    """phi / ||phi||_T as exact fractions; lands on the boundary of the unit ball."""
    norm = thurston_norm(phi)
    if norm == 0:
        raise FibernormValidationError("The zero class has no direction")
    return Fraction(phi.a, norm), Fraction(phi.b, norm)


def specialize(theta: TeichPolynomial, phi: CohomologyClass) -> IntPolynomial:
    """
    Theta(k) = sum of c · k^(a·i + b·j) over the monomials c·t^i·u^j.

    Raises NegativeExponentError when some monomial lands on a negative power,
    which happens for classes outside the cone this polynomial describes.
    """
    contributions: dict[int, int] = {}
    for term in theta.terms:
        exponent = phi.a * term.i + phi.b * term.j
        if exponent < 0:
            raise NegativeExponentError(
                f"Monomial t^{term.i} u^{term.j} specializes to k^{exponent} at {phi}; "
                "the class lies outside the cone of this polynomial"
            )
        contributions[exponent] = contributions.get(exponent, 0) + term.c
    try:
        return IntPolynomial.from_exponents(contributions)
    except ValueError as e:
        raise FibernormValidationError(f"Specialization at {phi} is degenerate: {e}") from e


def _sign_above_one(p: IntPolynomial, x: float) -> int:
    # sign of p(x) for x >= 1, from x^-d p(x) evaluated by Horner in 1/x
    inv = 1.0 / x
    value = 0.0
    for c in p.coefficients:
        value = value * inv + c
    return (value > 0) - (value < 0)


def largest_root(p: IntPolynomial, tol: float = DEFAULT_TOLERANCE) -> float:
    """
    Largest real root above 1, by sign bracketing on (1, 1 + sum |c|) and bisection.

    Roots of even multiplicity produce no sign change and are not detected.
    """
    if tol <= 0:
        raise FibernormValidationError(f"tolerance must be positive, got {tol}")
    if p.degree == 0:
        raise NoRootError(f"Constant polynomial {p} has no roots")

    upper = 1.0 + sum(abs(c) for c in p.coefficients)
    log_upper = math.log(upper)
    top = _sign_above_one(p, upper)
    hi, r = upper, 1.0
    while True:
        r *= ROOT_SCAN_RATIO
        last = r < ROOT_SCAN_FLOOR
        x = 1.0 if last else math.exp(log_upper * r)
        sign = _sign_above_one(p, x)
        if sign == top and not last:
            hi = x
            continue
        if sign == top or (sign == 0 and last):
            raise NoRootError(f"No sign change of {p} on (1, {upper})")
        if sign == 0:
            return x
        lo = x
        break

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s = _sign_above_one(p, mid)
        if s == 0:
            return mid
        if s == top:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=4096)
def stretch_factor(
    phi: CohomologyClass,
    theta: TeichPolynomial = CANONICAL_THETA,
    tol: float = DEFAULT_TOLERANCE,
) -> float:
    """Stretch factor of the monodromy of phi, the largest root of Theta specialized at phi."""
    return largest_root(specialize(theta, phi), tol)


def predicted_lmax(
    phi: CohomologyClass, n: int, theta: TeichPolynomial = CANONICAL_THETA
) -> float:
    """Order-of-magnitude estimate stretch_factor(phi)^n of the key length."""
    if n < 0:
        raise FibernormValidationError(f"N must be nonnegative, got {n}")
    return stretch_factor(phi, theta) ** n
