"""Vélu isogenies with a rational kernel, and the complement isogeny.

A Vélu isogeny V with kernel F sends R (not in F) to

    x_V(R) = x_R + sum_{Q in F*} (x_{R+Q} - x_Q)
    y_V(R) = y_R + sum_{Q in F*} (y_{R+Q} - y_Q).

Re-indexing the sum over the coset R + F gives
x_V(R) = sum_{S in R+F} x_S - sum_{Q in F*} x_Q, which lets
:meth:`Isogeny.eval_many` evaluate a whole point set with one group
addition per point.  The codomain keeps a1, a2, a3; a4' and a6' are solved
from two image points, with the classical t/w sums
(:func:`velu_codomain_classical`) available as an independent check.
"""

from dataclasses import dataclass, field

from .errors import (
    ComplementCodomainMismatch,
    CurveMismatch,
    FieldTooLarge,
    InternalError,
    NotExactOrder,
    TooFewSamplePoints,
)
from .finite_field import FieldElement, embed, ff_sqrt, field_make, quadratic_character, restrict
from .weierstrass import (
    ENUMERATION_BOUND,
    Curve,
    Point,
    _points_at,
    enumerate_points,
    has_exact_order,
    iter_points,
)


class Isogeny:
    """Vélu isogeny ``domain -> codomain`` with an explicit kernel list.

    ``kernel`` starts with infinity; for cyclic kernels it is
    ``[inf, P, 2P, ..., (m-1)P]`` and ``generator`` is P.
    """

    def __init__(self, domain, codomain, kernel, generator=None):
        self.domain = domain
        self.codomain = codomain
        self.kernel = list(kernel)
        self.degree = len(self.kernel)
        self.generator = generator
        self._kernel_raw = frozenset(Q.raw for Q in self.kernel)
        self._affine, self._sx, self._sy = _kernel_data(domain, self.kernel)
        self._cache = {}
        self._base_changes = {}

    def __repr__(self):
        return f"Isogeny(degree={self.degree}, {self.domain!r} -> {self.codomain!r})"

    def __reduce__(self):
        return (Isogeny, (self.domain, self.codomain, self.kernel, self.generator))

    def __eq__(self, other):
        if not isinstance(other, Isogeny):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self._kernel_raw == other._kernel_raw
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self._kernel_raw))

    def in_kernel(self, R):
        return R.raw in self._kernel_raw

    def __call__(self, R):
        return velu_eval(self, R)

    def eval_many(self, points):
        """Images of ``points`` (same order), via coset sums.

        Results are memoized on the isogeny, so repeated sweeps are free.
        """
        E, cache = self.domain, self._cache
        F = E.field
        add, sub = F.add, F.sub
        affine, sx, sy = self._affine, self._sx, self._sy
        kernel_raw = self._kernel_raw
        codomain = self.codomain
        out = []
        for R in points:
            key = R.raw
            img = cache.get(key)
            if img is None:
                if key in kernel_raw:
                    img = (None, None)
                else:
                    x0, y0 = key
                    coset = [key]
                    X, Y = x0, y0
                    for qx, qy in affine:
                        s = E._add_raw(x0, y0, qx, qy)
                        coset.append(s)
                        X = add(X, s[0])
                        Y = add(Y, s[1])
                    img = (sub(X, sx), sub(Y, sy))
                    for s in coset:
                        cache[s] = img
                cache[key] = img
            out.append(Point(codomain, img[0], img[1]))
        return out

    def base_change(self, target):
        """This isogeny with all data embedded in the extension ``target``."""
        if target == self.domain.field:
            return self
        phi = self._base_changes.get(target)
        if phi is None:
            dom = self.domain.base_change(target)
            cod = self.codomain.base_change(target)
            kernel = [_embed_point(Q, dom) for Q in self.kernel]
            gen = None if self.generator is None else _embed_point(self.generator, dom)
            phi = Isogeny(dom, cod, kernel, gen)
            self._base_changes[target] = phi
        return phi

    def kernel_x(self):
        return [Q.x.to_json() for Q in self.kernel if not Q.is_infinity]

    def to_json(self):
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "kernel_x": self.kernel_x(),
            "degree": self.degree,
        }


def _kernel_data(E, kernel):
    F = E.field
    affine = [Q.raw for Q in kernel if not Q.is_infinity]
    sx = sy = F.zero_raw
    for qx, qy in affine:
        sx = F.add(sx, qx)
        sy = F.add(sy, qy)
    return affine, sx, sy


def _embed_point(R, curve):
    if R.is_infinity:
        return curve.infinity
    return Point(curve, embed(R.x, curve.field).c, embed(R.y, curve.field).c)


def _image_raw(E, affine, x, y):
    """Literal point-sum formula for a point outside the kernel."""
    F = E.field
    X, Y = x, y
    for qx, qy in affine:
        sx, sy = E._add_raw(x, y, qx, qy)
        X = F.add(X, F.sub(sx, qx))
        Y = F.add(Y, F.sub(sy, qy))
    return X, Y


def velu_eval(phi, R):
    """Image of R under the Vélu isogeny phi (R may be over an extension)."""
    if R.curve.field != phi.domain.field:
        phi = phi.base_change(R.curve.field)
    if R.curve != phi.domain:
        raise CurveMismatch("point is not on the isogeny's domain")
    if R.raw in phi._kernel_raw:
        return phi.codomain.infinity
    X, Y = _image_raw(phi.domain, phi._affine, *R.raw)
    return Point(phi.codomain, X, Y)


def _sample_points_extension(E, k=2):
    """Affine points of E over the degree-k extension, lazily."""
    F = E.field
    F2 = field_make(F.p, k * F.n)
    if F2.q > ENUMERATION_BOUND * 100:
        raise FieldTooLarge(f"cannot sample points over {F2!r}")
    E2 = E.base_change(F2)
    for xe in F2.elements():
        u2 = 4 * xe**3 + E2.b2 * xe * xe + 2 * E2.b4 * xe + E2.b6
        if quadratic_character(u2) >= 0:
            yield from _points_at(E2, xe.c, u2.c, ff_sqrt(u2).c)


def _solve_codomain(E, affine, kernel_raw, samples, tries=None):
    first = None
    for R in samples:
        raw = R.raw
        if raw in kernel_raw:
            continue
        if tries is not None:
            if tries == 0:
                return None
            tries -= 1
        curve = R.curve
        X, Y = _image_raw(curve, affine, *raw)
        X = FieldElement(curve.field, X)
        Y = FieldElement(curve.field, Y)
        if first is None:
            first = (X, Y)
            continue
        X1, Y1 = first
        if X == X1:
            continue
        a1, a2, a3 = (embed(a, curve.field) for a in (E.a1, E.a2, E.a3))

        def rhs(X, Y):
            return Y * Y + a1 * X * Y + a3 * Y - X**3 - a2 * X * X

        a4 = (rhs(X1, Y1) - rhs(X, Y)) / (X1 - X)
        a6 = rhs(X1, Y1) - a4 * X1
        return a4, a6
    return None


# images of rational points tried before sampling over F_{q^2}; the
# complement isogeny maps every rational point into <P>, whose few
# x-coordinates rarely give two usable samples
RATIONAL_SAMPLE_TRIES = 8


def _codomain(E, kernel):
    """Codomain with a1..a3 copied and (a4', a6') solved from two images."""
    affine, _, _ = _kernel_data(E, kernel)
    kernel_raw = frozenset(Q.raw for Q in kernel)
    solved = _solve_codomain(E, affine, kernel_raw, iter_points(E), RATIONAL_SAMPLE_TRIES)
    # over F_{q^2} the image can still be too small (e.g. a 9-torsion kernel
    # inside 27 points over F_25), so step up until two images differ in x
    k = 2
    while solved is None:
        E2 = E.base_change(field_make(E.field.p, k * E.field.n))
        kernel2 = [_embed_point(Q, E2) for Q in kernel]
        affine2, _, _ = _kernel_data(E2, kernel2)
        raw2 = frozenset(Q.raw for Q in kernel2)
        try:
            solved = _solve_codomain(E, affine2, raw2, _sample_points_extension(E, k))
        except FieldTooLarge:
            raise TooFewSamplePoints(f"no usable sample points on {E!r}") from None
        if solved is not None:
            solved = tuple(restrict(a, E.field) for a in solved)
        k += 1
    a4, a6 = solved
    try:
        return Curve(E.field, E.a1, E.a2, E.a3, a4, a6)
    except ValueError as exc:
        raise InternalError(f"interpolated codomain is singular: {exc}") from exc


def velu_from_kernel(E, P, m):
    """The Vélu isogeny with cyclic kernel <P>, P of exact order m >= 2."""
    if m < 2 or P.curve != E or not has_exact_order(P, m):
        raise NotExactOrder(f"{P!r} does not have exact order {m}")
    kernel = [E.infinity]
    R = P
    for _ in range(1, m):
        kernel.append(R)
        R = R + P
    return Isogeny(E, _codomain(E, kernel), kernel, generator=P)


def velu_from_subgroup(E, points):
    """The Vélu isogeny whose kernel is the given finite subgroup."""
    kernel = sorted(set(points) | {E.infinity}, key=Point.sort_key)
    return Isogeny(E, _codomain(E, kernel), kernel)


def velu_codomain_classical(E, kernel):
    """(a4', a6') from the classical t/w sums over the kernel."""
    F = E.field
    a1, a2, a3, a4, a6 = E.a_invariants()
    t = w = F.zero()
    seen = set()
    for Q in kernel:
        if Q.is_infinity or Q.raw in seen:
            continue
        negQ = -Q
        seen.add(Q.raw)
        seen.add(negQ.raw)
        x, y = Q.x, Q.y
        gx = 3 * x * x + 2 * a2 * x + a4 - a1 * y
        gy = -2 * y - a1 * x - a3
        if negQ == Q:
            tq, uq = gx, F.zero()
        else:
            tq, uq = 2 * gx - a1 * gy, gy * gy
        t = t + tq
        w = w + uq + x * tq
    return a4 - 5 * t, a6 - E.b2 * t - 7 * w


def complement_isogeny(phi, domain_points=None):
    """The Vélu isogeny from phi's codomain with kernel phi(E_1(F_q)).

    Its codomain must coincide with phi's domain coefficient-wise.
    """
    if domain_points is None:
        domain_points = enumerate_points(phi.domain)
    image = set(phi.eval_many(domain_points))
    psi = velu_from_subgroup(phi.codomain, image)
    if psi.codomain != phi.domain:
        raise ComplementCodomainMismatch(
            f"complement codomain {psi.codomain!r} differs from {phi.domain!r}"
        )
    return psi


@dataclass
class ExactnessReport:
    kernel_size: int
    image_size: int
    ker_complement_matches_image: bool
    complement_image: list = field(repr=False)
    counts_multiply: bool
    kernel_matches: bool = True
    complement_image_is_kernel: bool = True
    domain_count: int = 0
    codomain_count: int = 0

    @property
    def counts_equal(self):
        return self.domain_count == self.codomain_count

    @property
    def ok(self):
        return (
            self.kernel_matches
            and self.ker_complement_matches_image
            and self.complement_image_is_kernel
            and self.counts_multiply
            and self.counts_equal
        )

    def to_json(self):
        return {
            "kernel_size": self.kernel_size,
            "image_size": self.image_size,
            "kernel_matches": self.kernel_matches,
            "ker_complement_matches_image": self.ker_complement_matches_image,
            "complement_image_is_kernel": self.complement_image_is_kernel,
            "counts_multiply": self.counts_multiply,
            "n1": self.domain_count,
            "n2": self.codomain_count,
            "ok": self.ok,
        }


def verify_exact_sequence(phi, phi_c, domain_points=None, codomain_points=None):
    """Check 0 -> <P> -> E_1(F_q) -> E_2(F_q) -> <P> -> 0 by enumeration."""
    pts1 = enumerate_points(phi.domain) if domain_points is None else domain_points
    pts2 = enumerate_points(phi.codomain) if codomain_points is None else codomain_points
    img1 = phi.eval_many(pts1)
    ker1 = {R for R, S in zip(pts1, img1) if S.is_infinity}
    image = set(img1)
    img2 = phi_c.eval_many(pts2)
    ker2 = {R for R, S in zip(pts2, img2) if S.is_infinity}
    image2 = set(img2)
    kernel = set(phi.kernel)
    return ExactnessReport(
        kernel_size=len(ker1),
        image_size=len(image),
        kernel_matches=ker1 == kernel and len(ker1) == phi.degree,
        ker_complement_matches_image=ker2 == image,
        complement_image=sorted(image2, key=Point.sort_key),
        complement_image_is_kernel=image2 == kernel,
        counts_multiply=phi.degree * len(image) == len(pts1),
        domain_count=len(pts1),
        codomain_count=len(pts2),
    )


def verify_frobenius_factorization(phi, phi_c, extension_degree=1):
    """phi_c(phi(R)) == R - Fr(R) for every R in E_1(F_{q^e})."""
    F = phi.domain.field
    q = F.q
    Fe = F if extension_degree == 1 else field_make(F.p, F.n * extension_degree)
    if Fe.q > ENUMERATION_BOUND:
        raise FieldTooLarge(f"q^e = {Fe.q} exceeds enumeration bound")
    phi_e = phi.base_change(Fe)
    phic_e = phi_c.base_change(Fe)
    E = phi_e.domain
    pts = enumerate_points(E)
    left = phic_e.eval_many(phi_e.eval_many(pts))
    for R, L in zip(pts, left):
        if R.is_infinity:
            fr = R
        else:
            fr = Point(E, Fe.pow(R._x, q), Fe.pow(R._y, q))
        if L != R - fr:
            return False
    return True
