"""Complete elliptic integrals for complex parameters via Carlson symmetric forms.

The duplication algorithms follow Carlson, "Numerical computation of real
or complex elliptic integrals" (arXiv:math/9409227).  All square roots are
principal-branch; on the parameter domain used here (moduli off the cut
[1, inf)) the iteration converges to the principal-branch values of the
Legendre integrals

    K(m)      = R_F(0, 1-m, 1)
    E(m)      = R_F(0, 1-m, 1) - (m/3) R_D(0, 1-m, 1)
    Pi(n | m) = R_F(0, 1-m, 1) + (n/3) R_J(0, 1-m, 1, 1-n)

with m the squared-modulus parameter convention.
"""

import numpy as np

from .errors import NumericsError

_EPS = np.finfo(float).eps
_MAX_ITER = 500


def carlson_rc(x, y):
    """Degenerate symmetric integral R_C(x, y) for complex arguments."""
    x = complex(x)
    y = complex(y)
    if y == 0:
        raise ValueError("carlson_rc requires y != 0")
    A0 = (x + 2 * y) / 3
    Q = (3 * _EPS) ** (-1 / 8) * abs(A0 - x)
    A = A0
    xn, yn = x, y
    f = 1.0
    for _ in range(_MAX_ITER):
        if Q * f < abs(A):
            s = (y - A0) * f / A
            poly = 1 + s * s * (
                3 / 10 + s * (1 / 7 + s * (3 / 8 + s * (9 / 22 + s * (159 / 208 + s * 9 / 8))))
            )
            return poly / np.sqrt(A)
        lam = 2 * np.sqrt(xn) * np.sqrt(yn) + yn
        xn = (xn + lam) / 4
        yn = (yn + lam) / 4
        A = (A + lam) / 4
        f /= 4
    raise NumericsError("carlson_rc duplication did not converge")


def carlson_rf(x, y, z):
    """Symmetric integral of the first kind R_F(x, y, z), complex arguments.

    At most one argument may be zero.
    """
    x, y, z = complex(x), complex(y), complex(z)
    if sum(v == 0 for v in (x, y, z)) > 1:
        raise ValueError("carlson_rf allows at most one zero argument")
    A0 = (x + y + z) / 3
    Q = (3 * _EPS) ** (-1 / 8) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    A = A0
    xn, yn, zn = x, y, z
    f = 1.0
    for _ in range(_MAX_ITER):
        if Q * f < abs(A):
            X = (A0 - x) * f / A
            Y = (A0 - y) * f / A
            Z = -X - Y
            E2 = X * Y - Z * Z
            E3 = X * Y * Z
            return (
                1
                + E3 * (1 / 14 + 3 * E3 / 104)
                + E2 * (-1 / 10 + E2 / 24 - 3 * E3 / 44 - 5 * E2 * E2 / 208 + E2 * E3 / 16)
            ) / np.sqrt(A)
        rx, ry, rz = np.sqrt(xn), np.sqrt(yn), np.sqrt(zn)
        lam = rx * ry + ry * rz + rz * rx
        xn = (xn + lam) / 4
        yn = (yn + lam) / 4
        zn = (zn + lam) / 4
        A = (A + lam) / 4
        f /= 4
    raise NumericsError("carlson_rf duplication did not converge")


def carlson_rd(x, y, z):
    """Degenerate third-kind integral R_D(x, y, z) = R_J(x, y, z, z)."""
    x, y, z = complex(x), complex(y), complex(z)
    if z == 0 or (x == 0 and y == 0):
        raise ValueError("carlson_rd requires z != 0 and at most one of x, y zero")
    A0 = (x + y + 3 * z) / 5
    Q = (_EPS / 4) ** (-1 / 8) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    A = A0
    xn, yn, zn = x, y, z
    f = 1.0
    acc = 0.0
    for _ in range(_MAX_ITER):
        if Q * f < abs(A):
            X = (A0 - x) * f / A
            Y = (A0 - y) * f / A
            Z = -(X + Y) / 3
            E2 = X * Y - 6 * Z * Z
            E3 = (3 * X * Y - 8 * Z * Z) * Z
            E4 = 3 * (X * Y - Z * Z) * Z * Z
            E5 = X * Y * Z * Z * Z
            series = (
                1
                - 3 * E2 / 14
                + E3 / 6
                + 9 * E2 * E2 / 88
                - 3 * E4 / 22
                - 9 * E2 * E3 / 52
                + 3 * E5 / 26
            )
            return 3 * acc + f * series * A ** (-1.5)
        rx, ry, rz = np.sqrt(xn), np.sqrt(yn), np.sqrt(zn)
        lam = rx * ry + ry * rz + rz * rx
        acc += f / (rz * (zn + lam))
        xn = (xn + lam) / 4
        yn = (yn + lam) / 4
        zn = (zn + lam) / 4
        A = (A + lam) / 4
        f /= 4
    raise NumericsError("carlson_rd duplication did not converge")


def carlson_rj(x, y, z, p):
    """Symmetric integral of the third kind R_J(x, y, z, p), complex arguments."""
    x, y, z, p = complex(x), complex(y), complex(z), complex(p)
    if p == 0 or sum(v == 0 for v in (x, y, z)) > 1:
        raise ValueError("carlson_rj requires p != 0 and at most one of x, y, z zero")
    A0 = (x + y + z + 2 * p) / 5
    delta = (p - x) * (p - y) * (p - z)
    Q = (_EPS / 5) ** (-1 / 8) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z), abs(A0 - p))
    A = A0
    xn, yn, zn, pn = x, y, z, p
    f = 1.0
    acc = 0.0
    for _ in range(_MAX_ITER):
        if Q * f < abs(A):
            X = (A0 - x) * f / A
            Y = (A0 - y) * f / A
            Z = (A0 - z) * f / A
            P = (-X - Y - Z) / 2
            E2 = X * Y + X * Z + Y * Z - 3 * P * P
            E3 = X * Y * Z + 2 * E2 * P + 4 * P ** 3
            E4 = (2 * X * Y * Z + E2 * P + 3 * P ** 3) * P
            E5 = X * Y * Z * P * P
            series = (
                1
                - 3 * E2 / 14
                + E3 / 6
                + 9 * E2 * E2 / 88
                - 3 * E4 / 22
                - 9 * E2 * E3 / 52
                + 3 * E5 / 26
            )
            return f * series * A ** (-1.5) + 6 * acc
        rx, ry, rz, rp = np.sqrt(xn), np.sqrt(yn), np.sqrt(zn), np.sqrt(pn)
        dn = (rp + rx) * (rp + ry) * (rp + rz)
        en = delta * f ** 3 / (dn * dn)
        acc += f / dn * carlson_rc(1.0, 1.0 + en)
        lam = rx * ry + ry * rz + rz * rx
        xn = (xn + lam) / 4
        yn = (yn + lam) / 4
        zn = (zn + lam) / 4
        pn = (pn + lam) / 4
        A = (A + lam) / 4
        f /= 4
    raise NumericsError("carlson_rj duplication did not converge")


def ellip_k(m):
    """Complete elliptic integral of the first kind, parameter m = k^2."""
    return carlson_rf(0.0, 1.0 - m, 1.0)


def ellip_e(m):
    """Complete elliptic integral of the second kind, parameter m = k^2."""
    m = complex(m)
    if m == 1:
        return 1.0 + 0j
    return carlson_rf(0.0, 1.0 - m, 1.0) - (m / 3) * carlson_rd(0.0, 1.0 - m, 1.0)


def ellip_pi(n, m):
    """Complete elliptic integral of the third kind Pi(n | m)."""
    n = complex(n)
    if n == 0:
        return ellip_k(m)
    return carlson_rf(0.0, 1.0 - m, 1.0) + (n / 3) * carlson_rj(0.0, 1.0 - m, 1.0, 1.0 - n)


def elliptic_kepi(n, m):
    """All three complete integrals (K(m), E(m), Pi(n|m)) in one call."""
    return ellip_k(m), ellip_e(m), ellip_pi(n, m)
