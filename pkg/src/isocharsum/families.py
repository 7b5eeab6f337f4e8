"""Parametrized curves carrying a rational point of order m, with closed forms.

Most rows use the Kubert model E(b, c): y^2 + (1 - c)xy - b y = x^3 - b x^2,
for which P = (0, 0).  Each row records the closed form of S_P in alpha
and lambda_i = zeta^i + zeta^-i.
"""

from dataclasses import dataclass, field
from itertools import islice
from math import gcd
from typing import Callable

from .charsum import lambdas
from .errors import CharsumError, WrongOrder
from .finite_field import embed, field_make
from .weierstrass import Curve, has_exact_order


def kubert_curve(F, b, c):
    """E(b, c); raises SingularCurve when the model is singular (e.g. b = 0)."""
    b, c = F(b), F(c)
    return Curve(F, 1 - c, -b, -b, 0, 0)


@dataclass(frozen=True)
class FamilyRow:
    name: str
    m: int
    model: str
    closed_form: str
    build: Callable = field(repr=False)
    evaluate: Callable = field(repr=False)
    two_params: bool = False


def _row2(F, a, b):
    return Curve(F, 0, a, 0, b, 0), (0, 0), {"alpha": a, "beta": b}


def _row3(F, a, b):
    return Curve(F, a, 0, b, 0, 0), (0, 0), {"alpha": a, "beta": b}


def _row4(F, a, _):
    return Curve(F, 1, -a, -a, 0, 0), (0, 0), {"alpha": a}


def _row4fmw(F, a, _):
    return Curve(F, 0, 1 - 2 * a, 0, a * a, 0), (a, a), {"alpha": a}


def _row5(F, a, _):
    return kubert_curve(F, a, a), (0, 0), {"alpha": a, "beta": a, "gamma": a}


def _row6(F, a, _):
    b = a + a * a
    return kubert_curve(F, b, a), (0, 0), {"alpha": a, "beta": b, "gamma": a}


def _row8(F, a, _):
    if a.is_zero():
        raise CharsumError("alpha = 0 is excluded for m = 8")
    b = (2 * a - 1) * (a - 1)
    c = b / a
    return kubert_curve(F, b, c), (0, 0), {"alpha": a, "beta": b, "gamma": c}


def _row10(F, a, _):
    d = a * (a - 1) - 1
    c = a * (d - 1)
    b = c * d
    return kubert_curve(F, b, c), (0, 0), {"alpha": a, "beta": b, "gamma": c, "delta": d}


def _zero(a, lam):
    return a - a


def _quintic(a, lam):
    l2 = lam[2]
    return (
        l2 * a**5
        - (3 * l2 + 2) * a**4
        - (l2 - 4) * a**3
        + (6 * l2 + 2) * a**2
        + (l2 - 4) * a
        - (2 * l2 + 2)
    )


ROWS = {
    r.name: r
    for r in [
        FamilyRow("2", 2, "y^2 = x(x^2 + alpha x + beta)", "0", _row2, _zero, two_params=True),
        FamilyRow("3", 3, "y^2 + alpha xy + beta y = x^3", "0", _row3, _zero, two_params=True),
        FamilyRow("4", 4, "y^2 + xy - alpha y = x^3 - alpha x^2", "-alpha", _row4, lambda a, l: -a),
        FamilyRow(
            "4'",
            4,
            "y^2 = x^3 + (1 - 2 alpha) x^2 + alpha^2 x, P = (alpha, alpha)",
            "0",
            _row4fmw,
            _zero,
        ),
        FamilyRow("5", 5, "E(alpha, alpha)", "l2*alpha", _row5, lambda a, l: l[2] * a),
        FamilyRow(
            "6", 6, "E(alpha + alpha^2, alpha)", "-alpha*(alpha + 2)", _row6, lambda a, l: -a * (a + 2)
        ),
        FamilyRow(
            "8",
            8,
            "E(beta, gamma), beta = (2 alpha - 1)(alpha - 1), gamma = beta/alpha",
            "-(alpha - 1)*(alpha^2 + 2*l1*alpha - l1)/alpha",
            _row8,
            lambda a, l: -(a - 1) * (a * a + 2 * l[1] * a - l[1]) / a,
        ),
        FamilyRow(
            "10",
            10,
            "E(beta, gamma), delta = alpha(alpha - 1) - 1, gamma = alpha(delta - 1), beta = gamma delta",
            "l2*a^5 - (3*l2 + 2)*a^4 - (l2 - 4)*a^3 + (6*l2 + 2)*a^2 + (l2 - 4)*a - (2*l2 + 2)",
            _row10,
            _quintic,
        ),
    ]
}

DEFAULT_ROWS = list(ROWS)


@dataclass
class FamilyInstance:
    row: str
    m: int
    params: dict
    curve: Curve
    P: object
    closed_form: str

    def label(self):
        ps = ",".join(f"{k}={int(v) if v.field.n == 1 else v.to_json()}" for k, v in self.params.items())
        return f"m={self.row} p={self.curve.field.p} {ps}"

    def to_json(self):
        return {
            "row": self.row,
            "m": self.m,
            "p": self.curve.field.p,
            "params": {k: v.to_json() for k, v in self.params.items()},
            "closed_form": self.closed_form,
        }


def rows_for_degrees(ms):
    """Family rows whose degree is in ms (m = 4 selects both degree-4 rows)."""
    ms = set(ms)
    return [name for name, r in ROWS.items() if r.m in ms]


def family_instance(row, F, alpha, beta=None):
    """The row's curve and point; raises SingularCurve or WrongOrder."""
    r = ROWS[str(row)]
    alpha = F(alpha)
    if r.two_params:
        if beta is None:
            raise CharsumError(f"row {row} needs alpha and beta")
        beta = F(beta)
    curve, (px, py), params = r.build(F, alpha, beta)
    P = curve.point(px, py)
    if not has_exact_order(P, r.m):
        raise WrongOrder(f"{P!r} does not have exact order {r.m} for alpha = {alpha!r}")
    return FamilyInstance(r.name, r.m, params, curve, P, r.closed_form)


def family_closed_form(inst, zeta):
    """Evaluate the row's closed form for S_P with lambda_i from zeta."""
    r = ROWS[inst.row]
    alpha = embed(inst.params["alpha"], zeta.field)
    return r.evaluate(alpha, lambdas(zeta, inst.m))


def corpus_generate(primes, rows=None, alpha_cap=50):
    """Valid instances in deterministic (p, row, alpha[, beta]) order.

    Singular or wrong-order parameters are skipped, as are p dividing m.
    Two-parameter rows stop after ``alpha_cap`` instances per prime.
    """
    rows = DEFAULT_ROWS if rows is None else [str(r) for r in rows]
    for p in primes:
        F = field_make(p)
        for name in rows:
            r = ROWS[name]
            if gcd(p, r.m) != 1:
                continue
            if r.two_params:
                pairs = (_try(name, F, a, b) for a in range(p) for b in range(p))
                yield from islice((i for i in pairs if i is not None), alpha_cap)
            else:
                for a in range(p):
                    inst = _try(name, F, a)
                    if inst is not None:
                        yield inst


def _try(name, F, a, b=None):
    try:
        return family_instance(name, F, a, b)
    except CharsumError:
        return None


def search_instances(F, m, cap=3):
    """Up to ``cap`` Kubert curves E(b, c) over F where (0, 0) has exact order m.

    Scans b in 1..q-1, then c, in canonical order.  Used for degrees with no
    dedicated row.
    """
    found = 0
    for b in F.elements():
        if b.is_zero():
            continue
        for c in F.elements():
            try:
                E = kubert_curve(F, b, c)
            except CharsumError:
                continue
            P = E.point(0, 0)
            if has_exact_order(P, m):
                yield FamilyInstance(f"search-{m}", m, {"beta": b, "gamma": c}, E, P, "")
                found += 1
                if found >= cap:
                    return
