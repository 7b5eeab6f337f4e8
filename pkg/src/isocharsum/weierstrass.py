"""General Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

No model reduction is ever performed: the isogeny formulas copy a1, a2, a3
from domain to codomain, so all five coefficients are carried everywhere.

Points keep raw field values (see :mod:`isocharsum.finite_field`); the
coordinates are exposed as ``FieldElement`` through properties.
"""

from math import isqrt

from .errors import (
    CoefficientsNotRational,
    CurveMismatch,
    FieldTooLarge,
    SingularCurve,
)
from .finite_field import Field, FieldElement, embed

ENUMERATION_BOUND = 10**5


class Curve:
    def __init__(self, field, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field(a) for a in (a1, a2, a3, a4, a6))
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.discriminant = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if self.discriminant.is_zero():
            raise SingularCurve(f"singular model {self.a_invariants()} over {field!r}")
        self._raw = tuple(a.c for a in (a1, a2, a3, a4, a6))
        self._key = (field, self._raw)
        self.infinity = Point(self, None, None)

    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Curve):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        a = ", ".join(repr(c) for c in self.a_invariants())
        return f"Curve({self.field!r}, [{a}])"

    def __reduce__(self):
        return (Curve, (self.field,) + self.a_invariants())

    # points
    def contains_raw(self, x, y):
        F = self.field
        add, mul = F.add, F.mul
        a1, a2, a3, a4, a6 = self._raw
        lhs = mul(y, add(add(y, mul(a1, x)), a3))
        rhs = add(mul(add(mul(add(x, a2), x), a4), x), a6)
        return lhs == rhs

    def point(self, x, y):
        """The affine point (x, y); raises ValueError if it is not on the curve."""
        x, y = self.field(x).c, self.field(y).c
        if not self.contains_raw(x, y):
            raise ValueError(f"({x}, {y}) is not on {self!r}")
        return Point(self, x, y)

    def lift_x(self, x):
        """Affine points with the given x-coordinate, canonical y order."""
        F = self.field
        x = F(x)
        u2 = 4 * x**3 + self.b2 * x * x + 2 * self.b4 * x + self.b6
        root = F.sqrt_table().get(u2.c)
        if root is None:
            return []
        return _points_at(self, x.c, u2.c, root)

    def base_change(self, target):
        """The same model over an extension field."""
        return Curve(target, *(embed(a, target) for a in self.a_invariants()))

    def to_json(self):
        return {"field": self.field.to_json(), "a": [a.to_json() for a in self.a_invariants()]}

    @classmethod
    def from_json(cls, data):
        F = Field.from_json(data["field"])
        return cls(F, *(F(c) for c in data["a"]))

    # group law on raw coordinates; None stands for infinity
    def _add_raw(self, x1, y1, x2, y2):
        F = self.field
        add, sub, mul = F.add, F.sub, F.mul
        a1, a2, a3, a4, a6 = self._raw
        if x1 == x2:
            s = add(add(add(y1, y2), mul(a1, x2)), a3)
            if s == F.zero_raw:
                return None, None
            # tangent
            den = add(add(add(y1, y1), mul(a1, x1)), a3)
            inv = F.inv(den)
            xx = mul(x1, x1)
            three_xx = add(add(xx, xx), xx)
            num = sub(add(add(three_xx, mul(add(a2, a2), x1)), a4), mul(a1, y1))
            lam = mul(num, inv)
            nu_num = sub(sub(add(mul(a4, x1), add(a6, a6)), mul(xx, x1)), mul(a3, y1))
            nu = mul(nu_num, inv)
        else:
            inv = F.inv(sub(x2, x1))
            lam = mul(sub(y2, y1), inv)
            nu = mul(sub(mul(y1, x2), mul(y2, x1)), inv)
        x3 = sub(sub(sub(add(mul(lam, lam), mul(a1, lam)), a2), x1), x2)
        y3 = sub(sub(F.neg(mul(add(lam, a1), x3)), nu), a3)
        return x3, y3

    def _neg_raw(self, x, y):
        F = self.field
        a1, _, a3, _, _ = self._raw
        return x, F.sub(F.neg(y), F.add(F.mul(a1, x), a3))


class Point:
    """A point of a Weierstrass curve; ``x is None`` encodes infinity."""

    __slots__ = ("curve", "_x", "_y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self._x = x
        self._y = y

    @property
    def is_infinity(self):
        return self._x is None

    @property
    def x(self):
        return None if self._x is None else FieldElement(self.curve.field, self._x)

    @property
    def y(self):
        return None if self._x is None else FieldElement(self.curve.field, self._y)

    @property
    def raw(self):
        return (self._x, self._y)

    def _check(self, other):
        if not isinstance(other, Point):
            raise TypeError(f"expected a Point, got {type(other).__name__}")
        if other.curve is not self.curve and other.curve != self.curve:
            raise CurveMismatch("points lie on different curves")

    def __add__(self, other):
        self._check(other)
        if self._x is None:
            return other
        if other._x is None:
            return self
        x, y = self.curve._add_raw(self._x, self._y, other._x, other._y)
        return Point(self.curve, x, y)

    def __neg__(self):
        if self._x is None:
            return self
        return Point(self.curve, *self.curve._neg_raw(self._x, self._y))

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __rmul__(self, k):
        return scalar_mul(k, self)

    def __mul__(self, k):
        return scalar_mul(k, self)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return (
            self._x == other._x
            and self._y == other._y
            and (self.curve is other.curve or self.curve == other.curve)
        )

    def __hash__(self):
        return hash((self._x, self._y))

    def sort_key(self):
        if self._x is None:
            return (0,)
        F = self.curve.field
        return (1, F.key(self._x), F.key(self._y))

    def __repr__(self):
        if self._x is None:
            return "inf"
        return f"({self.x!r}, {self.y!r})"

    def to_json(self):
        if self._x is None:
            return "inf"
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @classmethod
    def from_json(cls, curve, data):
        if data == "inf":
            return curve.infinity
        return curve.point(curve.field(data["x"]), curve.field(data["y"]))


def curve_make(F, a1=0, a2=0, a3=0, a4=0, a6=0):
    return Curve(F, a1, a2, a3, a4, a6)


def add(P, R):
    return P + R


def scalar_mul(k, P):
    """k*P by double-and-add; negative k goes through negation."""
    if k < 0:
        return scalar_mul(-k, -P)
    curve = P.curve
    rx, ry = None, None
    bx, by = P._x, P._y
    while k and bx is not None:
        if k & 1:
            if rx is None:
                rx, ry = bx, by
            else:
                rx, ry = curve._add_raw(rx, ry, bx, by)
        k >>= 1
        if k:
            bx, by = curve._add_raw(bx, by, bx, by)
    return Point(curve, rx, ry)


def _points_at(E, x, u2, u):
    """Affine points over x given u with u^2 = u2 where u = 2y + a1 x + a3."""
    F = E.field
    a1, _, a3, _, _ = E._raw
    half = F.inv(F.from_int(2))
    shift = F.add(F.mul(a1, x), a3)
    ys = {F.mul(F.sub(u, shift), half), F.mul(F.sub(F.neg(u), shift), half)}
    return [Point(E, x, y) for y in sorted(ys, key=F.key)]


def iter_points(E):
    """Affine points lazily, in canonical (x, y) order."""
    F = E.field
    add, mul = F.add, F.mul
    b2, b4, b6 = E.b2.c, E.b4.c, E.b6.c
    two_b4 = add(b4, b4)
    four = F.from_int(4)
    table = F.sqrt_table()
    for x in F.raw_elements():
        # u^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        u2 = add(mul(add(mul(add(mul(four, x), b2), x), two_b4), x), b6)
        u = table.get(u2)
        if u is not None:
            yield from _points_at(E, x, u2, u)


def enumerate_points(E, bound=ENUMERATION_BOUND):
    """All F_q-rational points, infinity first, then canonical (x, y) order."""
    if E.field.q > bound:
        raise FieldTooLarge(f"q = {E.field.q} exceeds enumeration bound {bound}")
    return [E.infinity] + list(iter_points(E))


def within_hasse_bound(n, q):
    """|n - q - 1| <= 2 sqrt(q), in exact integer arithmetic."""
    return (n - q - 1) ** 2 <= 4 * q


def point_order(P):
    """Least k >= 1 with kP = infinity, by stepping through multiples."""
    if P.is_infinity:
        return 1
    q = P.curve.field.q
    bound = q + 1 + isqrt(4 * q) + 1
    R = P
    for k in range(1, bound + 1):
        if R.is_infinity:
            return k
        R = R + P
    raise ArithmeticError(f"order of {P!r} exceeds the Hasse bound")


def has_exact_order(P, m):
    from ._numbers import prime_factors

    if not (m * P).is_infinity:
        return False
    return all(not ((m // r) * P).is_infinity for r in prime_factors(m))


def frobenius(P, q):
    """Coordinate-wise q-th power; the curve must be defined over F_q."""
    E = P.curve
    if any(a**q != a for a in E.a_invariants()):
        raise CoefficientsNotRational(f"{E!r} is not defined over F_{q}")
    if P.is_infinity:
        return P
    F = E.field
    return Point(E, F.pow(P._x, q), F.pow(P._y, q))
