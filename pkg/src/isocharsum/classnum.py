"""Characteristic-zero companions: Dirichlet's sum, 2-isogeny sums, m-th power residues.

Everything here is plain integer arithmetic.  ``mr_two_isogeny_sum`` works
with the pair

    E_1: y^2 = x^3 + a x^2 + b x,   E_2: y^2 = x^3 - 2a x^2 + (a^2 - 4b) x

and the 2-isogeny tau(x, y) = (y^2/x^2, y(b - x^2)/x^2).  Translating
x -> x - a turns E_2 into the Vélu codomain of E_1 with kernel (0, 0), which
is how the character is cross-checked against :mod:`isocharsum.charsum`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from ._numbers import euler_phi, is_prime, prime_factors
from .errors import BadReduction, CharTooSmall, CongruenceViolated, InternalError, NotPrime


def _check_prime(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p <= 3:
        raise CharTooSmall(f"p = {p} must exceed 3")


def legendre(x, p):
    """The Legendre symbol (x/p) in {-1, 0, 1}, by Euler's criterion."""
    r = pow(x, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def dirichlet_sum(p):
    """sum_{x=1}^{p-1} x (x/p)."""
    _check_prime(p)
    return sum(x * legendre(x, p) for x in range(1, p))


# -- class numbers -------------------------------------------------------


@dataclass(frozen=True)
class ClassData:
    p: int
    h_p: int
    h_star: int
    discriminant: int
    forms: tuple = ()

    def to_json(self):
        return {"p": self.p, "h_p": self.h_p, "h_star": self.h_star, "discriminant": self.discriminant}


def field_discriminant(p):
    """Discriminant of Q(sqrt(-p)): -p if p = 3 mod 4, else -4p."""
    return -p if p % 4 == 3 else -4 * p


def reduced_forms(D):
    """Reduced primitive forms (a, b, c) with b^2 - 4ac = D < 0, sorted."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append((a, b, c))
    return out


def class_number(p):
    _check_prime(p)
    D = field_discriminant(p)
    forms = tuple(reduced_forms(D))
    h = len(forms)
    return ClassData(p, h, h if p % 4 == 3 else 0, D, forms)


def verify_dirichlet(p):
    return dirichlet_sum(p) == -p * class_number(p).h_star


# -- the 2-isogeny sum -----------------------------------------------------


@dataclass(frozen=True)
class TwoIsogenySum:
    a: int
    b: int
    p: int
    S: int
    quotient: Fraction
    h_star: int
    defect: Fraction

    @property
    def divisible(self):
        return self.S % self.p == 0

    def __iter__(self):
        # unpacks as (S, quotient, defect)
        return iter((self.S, self.quotient, self.defect))

    def to_json(self):
        return {
            "a": self.a,
            "b": self.b,
            "p": self.p,
            "S": self.S,
            "quotient": str(self.quotient),
            "h_star": self.h_star,
            "defect": str(self.defect),
        }


def _affine_points(a2, a4, p):
    """Affine points of y^2 = x^3 + a2 x^2 + a4 x over F_p."""
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    pts = []
    for x in range(p):
        for y in roots.get((x * x * x + a2 * x * x + a4 * x) % p, ()):
            pts.append((x, y))
    return pts


def tau_image(a, b, p):
    """Affine points of tau(E_1(F_p)) on E_2 (tau sends (0, 0) to infinity)."""
    image = set()
    for x, y in _affine_points(a % p, b % p, p):
        if x == 0:
            continue
        ix2 = pow(x * x, -1, p)
        image.add((y * y * ix2 % p, y * (b - x * x) * ix2 % p))
    return image


def two_isogeny_character(a, b, p):
    """{P: chi_tau(P)} over the affine points of E_2(F_p)."""
    image = tau_image(a, b, p)
    return {P: 1 if P in image else -1 for P in _affine_points(-2 * a % p, (a * a - 4 * b) % p, p)}


def velu_two_isogeny_character(a, b, p):
    """The same character from the Vélu machinery, moved back by x -> x + a."""
    from .finite_field import field_make
    from .velu import velu_from_kernel
    from .charsum import make_context
    from .weierstrass import Curve

    F = field_make(p)
    E1 = Curve(F, 0, a, 0, b, 0)
    ctx = make_context(velu_from_kernel(E1, E1.point(0, 0), 2))
    return {
        ((int(R.x) + a) % p, int(R.y)): (-1) ** ctx.exponents[R.raw]
        for R in ctx.codomain_points
        if not R.is_infinity
    }


def mr_two_isogeny_sum(a, b, p, cross_check=False):
    """S = sum over affine P of E_2(F_p) of {x(P) - a} chi_tau(P).

    {.} is the least nonnegative residue.  Returns a ``TwoIsogenySum``,
    which unpacks as (S, S/(-p), |S/(-p) - h_star|).
    """
    _check_prime(p)
    if b % p == 0 or (a * a - 4 * b) % p == 0:
        raise BadReduction(f"bad reduction at p = {p} for (a, b) = ({a}, {b})")
    chi = two_isogeny_character(a, b, p)
    if cross_check and chi != velu_two_isogeny_character(a, b, p):
        raise InternalError(f"2-isogeny characters disagree for (a, b, p) = ({a}, {b}, {p})")
    S = sum((x - a) % p * s for (x, _), s in chi.items())
    h_star = class_number(p).h_star
    quotient = Fraction(S, -p)
    return TwoIsogenySum(a, b, p, S, quotient, h_star, abs(quotient - h_star))


# -- cyclotomic integers -----------------------------------------------------


def _poly_divmod(num, den):
    """Division of integer polynomials (constant first) by a monic divisor."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, num[: len(den) - 1]


_PHI = {}


def cyclotomic_polynomial(m):
    """Phi_m as a coefficient list, constant term first."""
    if m not in _PHI:
        num = [-1] + [0] * (m - 1) + [1]
        for d in range(1, m):
            if m % d == 0:
                num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
                assert not any(rem)
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        _PHI[m] = tuple(num)
    return list(_PHI[m])


class CyclotomicInteger:
    """An element of Z[x]/Phi_m(x), stored reduced (phi(m) coefficients)."""

    def __init__(self, m, coeffs=()):
        self.m = m
        phi = cyclotomic_polynomial(m)
        coeffs = list(coeffs)
        if len(coeffs) >= len(phi):
            _, coeffs = _poly_divmod(coeffs, phi)
        self.coeffs = tuple(coeffs) + (0,) * (euler_phi(m) - len(coeffs))

    @classmethod
    def zeta_power(cls, m, j):
        c = [0] * m
        c[j % m] = 1
        return cls(m, c)

    def _coerce(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.m, [other])
        if isinstance(other, CyclotomicInteger) and other.m == self.m:
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInteger(self.m, [u + v for u, v in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.m, [-u for u in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [0] * (2 * len(self.coeffs))
        for i, u in enumerate(self.coeffs):
            if u:
                for j, v in enumerate(other.coeffs):
                    out[i + j] += u * v
        return CyclotomicInteger(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = CyclotomicInteger(self.m, [1])
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        return f"CyclotomicInteger({self.m}, {list(self.coeffs)})"

    def to_json(self):
        return {"m": self.m, "coeffs": list(self.coeffs)}


def smallest_primitive_root(p):
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in qs):
            return g
    return 1  # p = 2


def residue_exponents(p, m):
    """{x: j} with (x/p)_m = zeta_m^j, normalized by the smallest primitive root."""
    if (p - 1) % m:
        raise CongruenceViolated(f"p = {p} is not 1 mod {m}")
    g = smallest_primitive_root(p)
    e = (p - 1) // m
    h = pow(g, e, p)
    j_of = {}
    t = 1
    for j in range(m):
        j_of[t] = j
        t = t * h % p
    return {x: j_of[pow(x, e, p)] for x in range(1, p)}


def power_residue_sum(p, m):
    """sum_{x=1}^{p-1} x (x/p)_m in Z[zeta_m]."""
    _check_prime(p)
    if m <= 2 or m % 2 == 0:
        raise ValueError(f"m = {m} must be odd and greater than 2")
    coeffs = [0] * m
    for x, j in residue_exponents(p, m).items():
        coeffs[j] += x
    return CyclotomicInteger(m, coeffs)
