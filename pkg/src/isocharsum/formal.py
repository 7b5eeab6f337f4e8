"""Laurent expansions at infinity and pullbacks of the invariant differential.

With the local parameter z = -x/y and w = -1/y, the Weierstrass equation
becomes w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3, which is
solved by fixed-point iteration.  An isogeny is pulled back by pushing the
generic point (x(z), y(z)) through its defining formulas in series
arithmetic; c_phi is the constant of proportionality between the pulled-back
differential and omega.
"""

from dataclasses import dataclass

from .errors import NonProportional, PrecisionTooLow

DEFAULT_PRECISION = 12
_EXACT = 1 << 40


class TruncatedSeries:
    """A Laurent series in z known modulo z^prec.

    ``coeffs[i]`` is the coefficient of z^(val + i).  Exact constants carry
    an effectively infinite ``prec``.
    """

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec):
        self.field = field
        coeffs = [field(c) for c in coeffs]
        coeffs = coeffs[: max(prec - val, 0)]
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.val = val if coeffs else prec
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def constant(cls, field, c):
        return cls(field, 0, [field(c)], _EXACT)

    @classmethod
    def monomial(cls, field, k, prec=_EXACT):
        return cls(field, k, [field.one()], prec)

    def __getitem__(self, k):
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[0] if self.coeffs else self.field.zero()

    @property
    def relative_precision(self):
        return self.prec - self.val

    def _promote(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(self.field, other)

    def __add__(self, other):
        other = self._promote(other)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        hi = min(hi, prec)
        return TruncatedSeries(self.field, lo, [self[k] + other[k] for k in range(lo, hi)], prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return self._promote(other) - self

    def __mul__(self, other):
        other = self._promote(other)
        F = self.field
        prec = min(self.val + other.prec, other.val + self.prec)
        if self.is_zero() or other.is_zero():
            return TruncatedSeries(F, prec, [], prec)
        lo = self.val + other.val
        n = min(len(self.coeffs) + len(other.coeffs) - 1, prec - lo)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = F.zero()
            for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncatedSeries(F, lo, out, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("series is zero to the tracked precision")
        F = self.field
        r = self.relative_precision
        if r >= _EXACT // 2:
            r = len(self.coeffs)
            if r == 1:
                return TruncatedSeries(F, -self.val, [self.lead.inverse()], _EXACT)
            raise ValueError("inverse of an exact polynomial needs a target precision")
        a = self.coeffs + [F.zero()] * (r - len(self.coeffs))
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, r):
            acc = F.zero()
            for i in range(1, k + 1):
                acc = acc + a[i] * out[k - i]
            out.append(-acc * inv0)
        return TruncatedSeries(F, -self.val, out, -self.val + r)

    def __truediv__(self, other):
        other = self._promote(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._promote(other) * self.inverse()

    def __pow__(self, e):
        result = TruncatedSeries.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self):
        F = self.field
        out = [c * (self.val + i) for i, c in enumerate(self.coeffs)]
        return TruncatedSeries(F, self.val - 1, out, self.prec - 1)

    def truncate(self, prec):
        return TruncatedSeries(self.field, self.val, self.coeffs, min(prec, self.prec))

    def __repr__(self):
        terms = [f"({c!r})*z^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms + [f"O(z^{self.prec})"])


@dataclass(frozen=True)
class DifferentialRatio:
    c: object
    residual_precision: int

    def to_json(self):
        return {"c": self.c.to_json(), "precision": self.residual_precision}


def expansion_at_infinity(E, N=DEFAULT_PRECISION):
    """(x(z), y(z)) with x = z^-2 - a1 z^-1 - a2 - a3 z - ..., y = -x/z.

    x is known to N terms.
    """
    if N < 6:
        raise PrecisionTooLow(f"precision {N} < 6")
    F = E.field
    a1, a2, a3, a4, a6 = E.a_invariants()
    prec = N + 3
    z = TruncatedSeries.monomial(F, 1, prec)
    z2 = z * z
    z3 = TruncatedSeries.monomial(F, 3, prec)
    w = z3
    for _ in range(N + 1):
        w2 = w * w
        w = z3 + a1 * z * w + a2 * z2 * w + a3 * w2 + a4 * z * w2 + a6 * w2 * w
        w = w.truncate(prec)
    x = z * w.inverse()
    y = -w.inverse()
    return x, y


def differential_series(E, N=DEFAULT_PRECISION):
    """omega = dx / (2y + a1 x + a3) as a power series in z."""
    x, y = expansion_at_infinity(E, N)
    return x.derivative() / (2 * y + E.a1 * x + E.a3)


def _series_chord(curve, x1, y1, x2, y2):
    """Chord addition where (x1, y1) is a series point and x1 != x2."""
    a1, a2, a3 = curve.a1, curve.a2, curve.a3
    den = (x2 - x1).inverse()
    lam = (y2 - y1) * den
    nu = (y1 * x2 - y2 * x1) * den
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return x3, y3


def velu_series(phi, x, y):
    """Push a series point on phi.domain through the point-sum formula."""
    F = phi.domain.field
    X, Y = x, y
    for Q in phi.kernel:
        if Q.is_infinity:
            continue
        qx = TruncatedSeries.constant(F, Q.x)
        qy = TruncatedSeries.constant(F, Q.y)
        sx, sy = _series_chord(phi.domain, x, y, qx, qy)
        X = X + sx - Q.x
        Y = Y + sy - Q.y
    return X, Y


def _ratio(domain, codomain, x, y, X, Y):
    omega = x.derivative() / (2 * y + domain.a1 * x + domain.a3)
    pulled = X.derivative() / (2 * Y + codomain.a1 * X + codomain.a3)
    return pulled / omega


def _constant_of(ratio):
    """Read c from a ratio series and check that it has no other terms."""
    F = ratio.field
    if ratio.is_zero():
        if ratio.prec <= 0:
            raise NonProportional("ratio series has no known coefficients")
        return DifferentialRatio(F.zero(), ratio.prec)
    if ratio.val < 0 or any(c for k, c in enumerate(ratio.coeffs) if ratio.val + k > 0):
        raise NonProportional(f"pullback is not a constant multiple of omega: {ratio!r}")
    return DifferentialRatio(ratio[0], ratio.prec)


def map_constant(domain, codomain, coordinate_map, N=DEFAULT_PRECISION):
    """c for a rational map given as a function on series points."""
    x, y = expansion_at_infinity(domain, N)
    X, Y = coordinate_map(x, y)
    return _constant_of(_ratio(domain, codomain, x, y, X, Y))


def normalization_constant(phi, N=DEFAULT_PRECISION):
    """c_phi with phi^* omega' = c_phi omega, for a Vélu isogeny phi."""
    return map_constant(phi.domain, phi.codomain, lambda x, y: velu_series(phi, x, y), N)


def identity_constant(E, N=DEFAULT_PRECISION):
    return map_constant(E, E, lambda x, y: (x, y), N)


def frobenius_constant(E, q=None, N=DEFAULT_PRECISION):
    """c for the q-power Frobenius endomorphism; the derivative of x^q vanishes."""
    q = E.field.q if q is None else q
    return map_constant(E, E, lambda x, y: (x**q, y**q), N)


def composite_constant(phi, psi, N=DEFAULT_PRECISION):
    """c for psi o phi, computed on the composed series."""

    def composed(x, y):
        X, Y = velu_series(phi, x, y)
        return velu_series(psi, X, Y)

    return map_constant(phi.domain, psi.codomain, composed, N)


def one_minus_frobenius_constant(E, q=None, N=DEFAULT_PRECISION):
    """c for the endomorphism R -> R - Fr(R).

    x^q has valuation -2q, so the chord cancels about 3q leading terms; the
    expansion is carried with that many extra terms.
    """
    q = E.field.q if q is None else q

    def one_minus_fr(x, y):
        fx, fy = x**q, y**q
        # -Fr(R) = (x^q, -y^q - a1 x^q - a3)
        nfy = -fy - E.a1 * fx - E.a3
        return _series_chord(E, x, y, fx, nfy)

    ratio = map_constant(E, E, one_minus_fr, N + 3 * q)
    return DifferentialRatio(ratio.c, min(ratio.residual_precision, N))


def isomorphism_codomain(E, u, r=0, s=0, t=0):
    """The curve E'' reached by eta(x, y) = (u^-2 (x - r), u^-3 (y - s x + r s - t))."""
    from .weierstrass import Curve

    F = E.field
    u, r, s, t = F(u), F(r), F(s), F(t)
    a1, a2, a3, a4, a6 = E.a_invariants()
    b1 = (a1 + 2 * s) / u
    b2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    b3 = (a3 + r * a1 + 2 * t) / u**3
    b4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    b6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    return Curve(F, b1, b2, b3, b4, b6)


def scaling_isomorphism_constant(E, u, r=0, s=0, t=0, N=DEFAULT_PRECISION):
    """c_eta for the change of variables eta; equals u."""
    F = E.field
    u, r, s, t = F(u), F(r), F(s), F(t)
    if u.is_zero():
        raise ValueError("u must be nonzero")
    target = isomorphism_codomain(E, u, r, s, t)
    ui = u.inverse()

    def eta(x, y):
        return (ui**2) * (x - r), (ui**3) * (y - s * x + r * s - t)

    return map_constant(E, target, eta, N).c
