"""The cokernel character of a Vélu isogeny and its x-weighted sum.

For V: E_1 -> E_2 with kernel <P> and complement V', every R in E_2(F_q)
satisfies V'(R) = jP for a unique j mod m, and chi(R) = zeta^j.  The sum
S_P = sum_{R != inf} chi(R) x_R is computed three ways:

* ``charsum_bruteforce``: over every point of E_2(F_q);
* ``charsum_compact``: sum_{j=1}^{m-1} zeta^j x_{jP}, from the kernel alone;
* ``charsum_lambda``: tabulated rewrites in lambda_i = zeta^i + zeta^-i.

All values live in F_{q^d}, the smallest extension containing mu_m.
"""

from dataclasses import dataclass
from math import gcd

from .errors import NoExponent, NoPreimage, NotExactOrder, UnsupportedM
from .finite_field import FieldElement, embed, field_make, has_exact_order, min_ext_degree, primitive_root_of_unity
from .velu import complement_isogeny
from .weierstrass import enumerate_points


@dataclass(frozen=True, eq=False)
class CharacterContext:
    phi: object
    phi_c: object
    P: object
    Q: object
    zeta: object
    d: int
    image_set: frozenset
    domain_points: list
    codomain_points: list
    exponents: dict

    @property
    def m(self):
        return self.phi.degree

    @property
    def target(self):
        return self.zeta.field

    def lift(self, a):
        return embed(a, self.target)


@dataclass(frozen=True)
class CharSumResult:
    value: object
    m: int
    zeta: object
    method: str

    def to_json(self):
        return self.value.to_json()


def root_of_unity_field(F, m):
    """(d, F_{q^d}) with d minimal such that m | q^d - 1."""
    d = min_ext_degree(F.q, m)
    return d, field_make(F.p, F.n * d)


def make_context(phi, zeta=None):
    """Build V', the exponent table on E_2(F_q), Q and zeta for phi."""
    m = phi.degree
    F = phi.domain.field
    d, target = root_of_unity_field(F, m)
    if zeta is None:
        zeta = primitive_root_of_unity(target, m)
    elif zeta.field != target or not has_exact_order(zeta, m):
        raise NotExactOrder(f"zeta must have exact order {m} in {target!r}")

    pts1 = enumerate_points(phi.domain)
    phi_c = complement_isogeny(phi, pts1)
    image_set = frozenset(phi.eval_many(pts1))
    pts2 = enumerate_points(phi.codomain)
    dlog = {S.raw: j for j, S in enumerate(phi.kernel)}
    exponents = {}
    Q = None
    for R, S in zip(pts2, phi_c.eval_many(pts2)):
        j = dlog.get(S.raw)
        if j is None:
            raise NoExponent(f"V'({R!r}) = {S!r} is not a multiple of P")
        exponents[R.raw] = j
        if Q is None and j == 1:
            Q = R
    if Q is None:
        raise NoPreimage("no point Q of E_2(F_q) with V'(Q) = P")
    return CharacterContext(
        phi=phi,
        phi_c=phi_c,
        P=phi.generator,
        Q=Q,
        zeta=zeta,
        d=d,
        image_set=image_set,
        domain_points=pts1,
        codomain_points=pts2,
        exponents=exponents,
    )


def char_exponent(ctx, R):
    """j in [0, m) with V'(R) = jP."""
    j = ctx.exponents.get(R.raw)
    if j is not None:
        return j
    S = ctx.phi_c(R)
    for j, T in enumerate(ctx.phi.kernel):
        if T == S:
            return j
    raise NoExponent(f"V'({R!r}) = {S!r} is not a multiple of P")


def char_exponent_coset(ctx, R, Q=None):
    """j in [0, m) with R - jQ in V(E_1(F_q)), by coset membership."""
    Q = ctx.Q if Q is None else Q
    S = R
    for j in range(ctx.m):
        if S in ctx.image_set:
            return j
        S = S - Q
    raise NoExponent(f"{R!r} lies in no coset jQ + V(E_1(F_q))")


def character(ctx, R):
    return ctx.zeta ** char_exponent(ctx, R)


def charsum_bruteforce(ctx):
    """Sum of chi(R) x_R over the affine points of E_2(F_q)."""
    F = ctx.phi.codomain.field
    partial = [F.zero_raw] * ctx.m
    for R in ctx.codomain_points:
        if R.is_infinity:
            continue
        j = ctx.exponents[R.raw]
        partial[j] = F.add(partial[j], R._x)
    total = ctx.target.zero()
    zj = ctx.target.one()
    for j in range(ctx.m):
        total = total + zj * ctx.lift(FieldElement(F, partial[j]))
        zj = zj * ctx.zeta
    return CharSumResult(total, ctx.m, ctx.zeta, "brute")


def compact_sum(kernel, zeta):
    """sum_{j=1}^{m-1} zeta^j x_{jP} for kernel = [inf, P, 2P, ...]."""
    target = zeta.field
    total = target.zero()
    zj = target.one()
    for R in kernel[1:]:
        zj = zj * zeta
        total = total + zj * embed(R.x, target)
    return total


def charsum_compact(ctx):
    return CharSumResult(compact_sum(ctx.phi.kernel, ctx.zeta), ctx.m, ctx.zeta, "compact")


def lambdas(zeta, m):
    """[_, lambda_1, ..., lambda_{m-1}] with lambda_i = zeta^i + zeta^-i."""
    zi = zeta.inverse()
    return [None] + [zeta**i + zi**i for i in range(1, m)]


# Rows of the small-m table, as functions of x = [_, x_P, x_2P, ...] and lambdas,
# kept exactly as tabulated.  The m = 6 entry is not an identity: with
# lambda_1 = 1 and lambda_2 = -1 the compact sum is x_P - x_2P - x_3P, so the
# tabulated -x_3P is off whenever x_P != x_2P (on E(b, c), always, as
# x_P = 0 and x_2P = b).  ``lambda_sum_general`` gives the correct value.
LAMBDA_FORMS = {
    2: ("-x1", lambda x, l: -x[1]),
    3: ("-x1", lambda x, l: -x[1]),
    4: ("-x2", lambda x, l: -x[2]),
    6: ("-x3", lambda x, l: -x[3]),
    5: ("l1*x1 + l2*x2", lambda x, l: l[1] * x[1] + l[2] * x[2]),
    8: ("l1*(x1 - x3) - x4", lambda x, l: l[1] * (x[1] - x[3]) - x[4]),
    10: (
        "l1*(x1 - x4) + l2*(x2 - x3) - x5",
        lambda x, l: l[1] * (x[1] - x[4]) + l[2] * (x[2] - x[3]) - x[5],
    ),
    12: (
        "l1*(x1 - x5) + x2 - x4 - x6",
        lambda x, l: l[1] * (x[1] - x[5]) + x[2] - x[4] - x[6],
    ),
    7: ("l1*x1 + l2*x2 + l3*x3", lambda x, l: l[1] * x[1] + l[2] * x[2] + l[3] * x[3]),
    9: (
        "l1*x1 + l2*x2 - x3 + l4*x4",
        lambda x, l: l[1] * x[1] + l[2] * x[2] - x[3] + l[4] * x[4],
    ),
}


def _kernel_x(kernel, target):
    return [None] + [embed(R.x, target) for R in kernel[1:]]


def lambda_sum(kernel, zeta):
    m = len(kernel)
    if m not in LAMBDA_FORMS:
        raise UnsupportedM(f"no tabulated lambda form for m = {m}")
    x = _kernel_x(kernel, zeta.field)
    return LAMBDA_FORMS[m][1](x, lambdas(zeta, m))


def lambda_sum_general(kernel, zeta):
    """sum_{j<=k} lambda_j x_jP for m = 2k+1; -x_kP + sum_{j<k} lambda_j x_jP for m = 2k."""
    m = len(kernel)
    x = _kernel_x(kernel, zeta.field)
    lam = lambdas(zeta, m)
    k = m // 2
    if m % 2:
        return sum((lam[j] * x[j] for j in range(1, k + 1)), zeta.field.zero())
    return sum((lam[j] * x[j] for j in range(1, k)), -x[k])


def charsum_lambda(ctx):
    return CharSumResult(lambda_sum(ctx.phi.kernel, ctx.zeta), ctx.m, ctx.zeta, "lambda")


def distinct_values(phi, zeta=None):
    """The set of compact sums over all generators zeta^a of mu_m."""
    m = phi.degree
    if zeta is None:
        _, target = root_of_unity_field(phi.domain.field, m)
        zeta = primitive_root_of_unity(target, m)
    return {compact_sum(phi.kernel, zeta**a) for a in range(1, m) if gcd(a, m) == 1}
