"""Supersingular p-Weil polynomials of degree 4.

For p >= 7 these are (X^2-p)^2, (X^2+p)^2 and X^4 + e*p*X^2 + p^2 for
e in {-1, 0, 1}.  Two independent routes are provided: the closed-form
enumeration and a root-of-unity oracle plus a brute-force reconstruction.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .scalars import _is_prime


class PrimeTooSmall(ValueError):
    pass


LABELS = ("ProdPlus", "ProdMinus", "Eps(-1)", "Eps(0)", "Eps(+1)")


@dataclass(frozen=True)
class WeilPolynomial:
    coefficients: tuple  # ascending, degree 4, monic, integers
    p: int
    label: str

    def __str__(self):
        return polys.to_string(list(self.coefficients))


def _forms(p):
    return {
        "ProdPlus": (p * p, 0, -2 * p, 0, 1),  # (X^2-p)^2
        "ProdMinus": (p * p, 0, 2 * p, 0, 1),  # (X^2+p)^2
        "Eps(-1)": (p * p, 0, -p, 0, 1),
        "Eps(0)": (p * p, 0, 0, 0, 1),
        "Eps(+1)": (p * p, 0, p, 0, 1),
    }


def _require_prime(p):
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 7:
        raise PrimeTooSmall(f"classification requires p >= 7, got {p}")


def enumerate_ss_weil_deg4(p):
    """The five supersingular p-Weil polynomials of degree 4, labeled."""
    _require_prime(p)
    return {WeilPolynomial(c, p, label) for label, c in _forms(p).items()}


def label_of(coefficients, p):
    """Label for a monic degree-4 integer polynomial when it is one of the five forms."""
    for label, c in _forms(p).items():
        if tuple(coefficients) == c:
            return label
    return None


def squares_over_p_poly(f, p):
    """Monic quartic whose roots are alpha^2/p for the roots alpha of f.

    With f = X^4 + a X^3 + b X^2 + c X + d this is
    res_X(f(X), X^2 - p y) / p^4 = ((p^2 y^2 + b p y + d)^2 - p y (a p y + c)^2) / p^4.
    """
    a, b, c, d = (Fraction(f[3]), Fraction(f[2]), Fraction(f[1]), Fraction(f[0]))
    py = [Fraction(0), Fraction(p)]
    left = polys.add(polys.mul(py, py), polys.add(polys.scale(py, b), [d]))
    right = polys.add(polys.scale(py, a), [c])
    res = polys.sub(polys.mul(left, left), polys.mul(py, polys.mul(right, right)))
    return polys.scale(res, Fraction(1, p**4))


def is_ss_weil(f, p):
    """True iff the monic integer quartic f is a supersingular p-Weil polynomial.

    Oracle route: every alpha^2/p must be a root of unity (all irreducible
    factors of the squares-over-p polynomial are cyclotomic, order <= 30),
    and the multiplicity of X^2 - p in f must be even.
    """
    f = [Fraction(c) for c in f]
    if polys.degree(f) != 4 or f[4] != 1:
        raise ValueError("f must be monic of degree 4")
    if any(c.denominator != 1 for c in f):
        raise ValueError("f must have integer coefficients")
    g = squares_over_p_poly(f, p)
    for m in range(1, 31):
        phi = list(polys.cyclotomic(m))
        while polys.degree(g) >= polys.degree(phi) and polys.divides(phi, g):
            g, _ = polys.divmod_poly(g, phi)
    if polys.degree(g) != 0:
        return False
    x2mp = [Fraction(-p), Fraction(0), Fraction(1)]
    mult = 0
    h = f
    while polys.degree(h) >= 2 and polys.divides(x2mp, h):
        h, _ = polys.divmod_poly(h, x2mp)
        mult += 1
    return mult % 2 == 0


_ORBITS = {
    "ProdPlus": (1, ("+sqrt(p)", "-sqrt(p)")),
    "ProdMinus": (4, ("+z4*sqrt(p)", "-z4*sqrt(p)")),
    "Eps(+1)": (3, ("+z3*sqrt(p)", "-z3*sqrt(p)", "+z3c*sqrt(p)", "-z3c*sqrt(p)")),
    "Eps(0)": (8, ("+z8*sqrt(p)", "-z8*sqrt(p)", "+z8c*sqrt(p)", "-z8c*sqrt(p)")),
    "Eps(-1)": (12, ("+z12*sqrt(p)", "-z12*sqrt(p)", "+z12c*sqrt(p)", "-z12c*sqrt(p)")),
}

# (zeta_m + conj(zeta_m))^2 for the orbit's m; the orbit product is
# ((X^2+p)^2 - t p X^2) ** (4 / orbit size).
_ORBIT_TRACE_SQ = {1: 4, 4: 0, 3: 1, 8: 2, 12: 3}


def conjugacy_orbit(label):
    """(m, symbolic orbit) of the roots zeta_m * sqrt(p) for the label."""
    if label not in _ORBITS:
        raise ValueError(f"unknown label {label!r}")
    return _ORBITS[label]


def orbit_polynomial(label, p):
    """Reconstruct the labeled polynomial from its conjugacy orbit.

    The orbit {(+/-) zeta sqrt(p), (+/-) conj(zeta) sqrt(p)} multiplies out to
    (X^2 + p)^2 - t p X^2 with t = (zeta + conj(zeta))^2; size-2 orbits are
    squared to reach degree 4.
    """
    m, _ = conjugacy_orbit(label)
    t = _ORBIT_TRACE_SQ[m]
    return polys.sub(polys.mul([p, 0, 1], [p, 0, 1]), polys.scale([0, 0, 1], t * p))


def _h_candidates():
    """Monic quartics that are products of cyclotomic polynomials."""
    by_deg = {1: [1, 2], 2: [3, 4, 6], 4: [5, 8, 10, 12]}
    shapes = []
    for m in by_deg[4]:
        shapes.append((m,))
    for i, a in enumerate(by_deg[2]):
        for b in by_deg[2][i:]:
            shapes.append((a, b))
    for a in by_deg[2]:
        for i, c in enumerate(by_deg[1]):
            for d in by_deg[1][i:]:
                shapes.append((a, c, d))
    for combo in ((1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 2), (1, 2, 2, 2), (2, 2, 2, 2)):
        shapes.append(combo)
    out = []
    for shape in shapes:
        h = [Fraction(1)]
        for m in shape:
            h = polys.mul(h, list(polys.cyclotomic(m)))
        out.append(h)
    return out


def brute_force_ss_weil_deg4(p):
    """Independent reconstruction of all supersingular p-Weil quartics.

    Every such f satisfies f(X) f(-X) = g0(X^2) where g0(Y) = p^4 h(Y/p) and h
    is a product of cyclotomic polynomials of total degree 4.  Solve the
    coefficient equations for integer (A, B, C, D), then filter by the even
    multiplicity of X^2 - p.
    """
    _require_prime(p)
    amax = int(4 * p**0.5) + 1
    found = set()
    for h in _h_candidates():
        g0 = [h[i] * Fraction(p) ** (4 - i) for i in range(5)]
        if any(c.denominator != 1 for c in g0):
            continue
        g3, g2, g1, g0c = int(g0[3]), int(g0[2]), int(g0[1]), int(g0[0])
        for dsign in (1, -1):
            D = dsign * p * p
            if D * D != g0c:
                continue
            for A in range(-amax, amax + 1):
                if (g3 + A * A) % 2:
                    continue
                B = (g3 + A * A) // 2
                c2 = 2 * B * D - g1
                if c2 < 0:
                    continue
                C = math.isqrt(c2)
                if C * C != c2:
                    continue
                for Cs in {C, -C}:
                    if B * B + 2 * D - 2 * A * Cs == g2:
                        f = (D, Cs, B, A, 1)
                        x2mp = [Fraction(-p), Fraction(0), Fraction(1)]
                        hh = [Fraction(c) for c in f]
                        mult = 0
                        while polys.degree(hh) >= 2 and polys.divides(x2mp, hh):
                            hh, _ = polys.divmod_poly(hh, x2mp)
                            mult += 1
                        if mult % 2 == 0:
                            found.add(f)
    return {WeilPolynomial(c, p, label_of(c, p) or "?") for c in found}


def satisfies_functional_equation(f, p):
    """f(X) = X^4 f(p/X) / p^2, i.e. f is a p-Weil functional-equation quartic."""
    d, c, b, a, lead = f
    return lead == 1 and d == p * p and c == p * a
