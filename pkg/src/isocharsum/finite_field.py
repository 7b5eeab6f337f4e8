"""Exact arithmetic in F_p and F_{p^n}.

Elements of F_p are stored as ints in [0, p).  Elements of F_{p^n} with
n > 1 are tuples of n residues, constant term first, modulo a monic
irreducible polynomial.  ``Field`` exposes "raw" operations on these
representations; ``FieldElement`` wraps a raw value for the public API.

Every place that needs a distinguished element (roots of unity, square
roots, embedding roots) uses the canonical order: compare coefficients from
the highest degree down.
"""

import itertools
import threading
from math import gcd

from ._numbers import is_prime, prime_factors
from .errors import (
    CharTooSmall,
    DivisionByZero,
    FieldTooLarge,
    InternalError,
    NoEmbedding,
    NonResidue,
    NoSuchRoot,
    NotCoprime,
    NotPrime,
    ReducibleModulus,
)

ELEMENT_CACHE_BOUND = 10**5
EMBED_SEARCH_BOUND = 2 * 10**6

_lock = threading.Lock()
_fields = {}
_canonical_moduli = {}
_embed_roots = {}
_roots_of_unity = {}


# --- polynomials over F_p: lists of ints, constant term first ---------------

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    f = _trim([c % p for c in f])
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return f


def _pmulmod(f, g, mod, p):
    if not f or not g:
        return []
    prod = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] += a * b
    return _pmod(prod, mod, p)


def _ppowmod(f, e, mod, p):
    result = [1]
    base = _pmod(list(f), mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(f, g, p):
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _psub(f, g, p):
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return _trim([(a - b) % p for a, b in zip(f, g)])


def is_irreducible(modulus, p):
    """Rabin's test for a monic polynomial (coefficients constant first)."""
    f = [c % p for c in modulus]
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^n) == x (mod f)
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for r in prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _canonical_tuples(p, n):
    """All n-tuples over [0, p) (constant first) in canonical order."""
    for digits in itertools.product(range(p), repeat=n):
        yield tuple(reversed(digits))


def canonical_modulus(p, n):
    """First monic irreducible of degree n: x^n + r(x), r in canonical order."""
    if n == 1:
        return (0, 1)
    key = (p, n)
    if key in _canonical_moduli:
        return _canonical_moduli[key]
    for low in _canonical_tuples(p, n):
        if low[0] == 0:
            continue
        f = low + (1,)
        if is_irreducible(f, p):
            with _lock:
                _canonical_moduli[key] = f
            return f
    raise InternalError(f"no irreducible polynomial of degree {n} over F_{p}")


# --- fields -----------------------------------------------------------------

def field_make(p, n=1, modulus=None):
    """Return the field F_{p^n}, cached so equal inputs give the same object."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < 5:
        raise CharTooSmall(f"characteristic {p} < 5 is not supported")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        modulus = canonical_modulus(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
    key = (p, n, modulus)
    field = _fields.get(key)
    if field is None:
        with _lock:
            field = _fields.setdefault(key, Field(p, n, modulus))
    return field


GF = field_make


class Field:
    """The finite field F_{p^n} = F_p[x]/(modulus).

    Construct through :func:`field_make`; instances are interned.
    """

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._sqrt_table = None
        self._elements = None
        if n == 1:
            self.zero_raw = 0
            self.one_raw = 1
            self.add = self._add1
            self.sub = self._sub1
            self.mul = self._mul1
            self.neg = self._neg1
            self.inv = self._inv1
        else:
            self.zero_raw = (0,) * n
            self.one_raw = (1,) + (0,) * (n - 1)
            self._red = [(i, c) for i, c in enumerate(modulus[:n]) if c]
            self.add = self._addn
            self.sub = self._subn
            self.neg = self._negn
            if n == 2:
                self.mul = self._mul2
                self.inv = self._inv2
            else:
                self.mul = self._muln
                self.inv = self._invn

    def __reduce__(self):
        return (field_make, (self.p, self.n, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    # raw arithmetic, prime field
    def _add1(self, a, b):
        return (a + b) % self.p

    def _sub1(self, a, b):
        return (a - b) % self.p

    def _mul1(self, a, b):
        return a * b % self.p

    def _neg1(self, a):
        return -a % self.p

    def _inv1(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    # raw arithmetic, extension field
    def _addn(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _subn(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _negn(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul2(self, a, b):
        p = self.p
        m0, m1 = self.modulus[0], self.modulus[1]
        a0, a1 = a
        b0, b1 = b
        hi = a1 * b1
        return ((a0 * b0 - m0 * hi) % p, (a0 * b1 + a1 * b0 - m1 * hi) % p)

    def _inv2(self, a):
        p = self.p
        m0, m1 = self.modulus[0], self.modulus[1]
        a0, a1 = a
        norm = (a0 * a0 - m1 * a0 * a1 + m0 * a1 * a1) % p
        if norm == 0:
            raise DivisionByZero("inverse of zero")
        ni = pow(norm, -1, p)
        return ((a0 - m1 * a1) * ni % p, -a1 * ni % p)

    def _muln(self, a, b):
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                base = k - n
                for i, mi in self._red:
                    prod[base + i] -= c * mi
        return tuple(x % p for x in prod[:n])

    def _invn(self, a):
        p, n = self.p, self.n
        f = _trim(list(a))
        if not f:
            raise DivisionByZero("inverse of zero")
        # extended Euclid on (modulus, a)
        r0, r1 = list(self.modulus), f
        s0, s1 = [], [1]
        while len(r1) > 1:
            qt = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            inv_lead = pow(r1[-1], -1, p)
            while len(r) >= len(r1) and r:
                c = r[-1] * inv_lead % p
                shift = len(r) - len(r1)
                qt[shift] = c
                for i, v in enumerate(r1):
                    r[shift + i] = (r[shift + i] - c * v) % p
                _trim(r)
            s = _psub(s0, _pmulmod_plain(qt, s1, p), p)
            r0, r1, s0, s1 = r1, r, s1, s
        c = pow(r1[0], -1, p)
        out = [x * c % p for x in s1] + [0] * n
        return tuple(out[:n])

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one_raw
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def from_int(self, k):
        if self.n == 1:
            return k % self.p
        return (k % self.p,) + (0,) * (self.n - 1)

    def key(self, a):
        """Sort key realizing the canonical order."""
        if self.n == 1:
            return a
        return a[::-1]

    # element construction
    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            raise ValueError(f"too many coefficients for {self!r}")
        coeffs += [0] * (self.n - len(coeffs))
        if self.n == 1:
            return FieldElement(self, coeffs[0])
        return FieldElement(self, tuple(coeffs))

    def zero(self):
        return FieldElement(self, self.zero_raw)

    def one(self):
        return FieldElement(self, self.one_raw)

    def gen(self):
        """The class of x in F_p[x]/(modulus)."""
        if self.n == 1:
            return FieldElement(self, -self.modulus[0] % self.p)
        return FieldElement(self, (0, 1) + (0,) * (self.n - 2))

    def iter_raw(self):
        """Raw values in canonical order, lazily."""
        if self._elements is not None:
            return iter(self._elements)
        if self.n == 1:
            return iter(range(self.p))
        return _canonical_tuples(self.p, self.n)

    def raw_elements(self):
        """All raw values in canonical order; cached for fields up to ELEMENT_CACHE_BOUND."""
        if self._elements is not None:
            return self._elements
        elems = list(self.iter_raw())
        if self.q <= ELEMENT_CACHE_BOUND:
            self._elements = elems
        return elems

    def elements(self):
        for c in self.iter_raw():
            yield FieldElement(self, c)

    def sqrt_table(self):
        """Map raw square -> raw canonically smaller square root (cached)."""
        if self._sqrt_table is None:
            table = {}
            mul = self.mul
            for r in self.raw_elements():
                s = mul(r, r)
                if s not in table:
                    table[s] = r
            self._sqrt_table = table
        return self._sqrt_table

    def to_json(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data):
        return field_make(data["p"], data["n"], data["modulus"])


def _pmulmod_plain(f, g, p):
    if not f or not g:
        return []
    prod = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return _trim(prod)


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other.c
            raise ValueError(f"mixed fields {self.field!r} and {other.field!r}")
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.c, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(o, self.field.inv(self.c)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.c))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.c, e))

    def inverse(self):
        return ff_inv(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and (other.field is self.field or other.field == self.field)
        if isinstance(other, int):
            return self.c == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __lt__(self, other):
        return self.field.key(self.c) < self.field.key(self._coerce(other))

    def __bool__(self):
        return self.c != self.field.zero_raw

    def is_zero(self):
        return self.c == self.field.zero_raw

    def sort_key(self):
        return self.field.key(self.c)

    def coeffs(self):
        if self.field.n == 1:
            return [self.c]
        return list(self.c)

    def to_json(self):
        return self.coeffs()

    def __int__(self):
        if self.field.n == 1:
            return self.c
        if any(self.c[1:]):
            raise ValueError(f"{self!r} is not in the prime field")
        return self.c[0]

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.c}"
        terms = []
        for i, c in enumerate(self.c):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}" if i > 1 else f"{c}*x")
        return " + ".join(reversed(terms)) or "0"


# --- operations ---------------------------------------------------------------

def ff_inv(a):
    return FieldElement(a.field, a.field.inv(a.c))


def quadratic_character(a):
    """0, 1 or -1 according as a is zero, a nonzero square, or a non-square."""
    F = a.field
    if a.c == F.zero_raw:
        return 0
    t = F.pow(a.c, (F.q - 1) // 2)
    return 1 if t == F.one_raw else -1


def _first_nonresidue(F):
    for c in F.iter_raw():
        if c != F.zero_raw and F.pow(c, (F.q - 1) // 2) != F.one_raw:
            return c
    raise InternalError(f"{F!r} has no quadratic non-residue")


def ff_sqrt(a):
    """Square root by Tonelli-Shanks; the canonically smaller root is returned."""
    F = a.field
    chi = quadratic_character(a)
    if chi == 0:
        return F.zero()
    if chi < 0:
        raise NonResidue(f"{a!r} is not a square in {F!r}")
    s, t = 0, F.q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    one = F.one_raw
    c = F.pow(_first_nonresidue(F), t)
    x = F.pow(a.c, (t + 1) // 2)
    b = F.pow(a.c, t)
    r = s
    while b != one:
        i, bb = 0, b
        while bb != one:
            bb = F.mul(bb, bb)
            i += 1
        g = c
        for _ in range(r - i - 1):
            g = F.mul(g, g)
        x = F.mul(x, g)
        c = F.mul(g, g)
        b = F.mul(b, c)
        r = i
    other = F.neg(x)
    if F.key(other) < F.key(x):
        x = other
    return FieldElement(F, x)


def min_ext_degree(q, m):
    """Smallest d >= 1 with m | q^d - 1."""
    if gcd(q, m) != 1:
        raise NotCoprime(f"gcd({q}, {m}) != 1")
    if m == 1:
        return 1
    d, t = 1, q % m
    while t != 1 % m:
        t = t * q % m
        d += 1
    return d


def has_exact_order(a, m):
    F = a.field
    if F.pow(a.c, m) != F.one_raw:
        return False
    return all(F.pow(a.c, m // r) != F.one_raw for r in prime_factors(m))


def primitive_root_of_unity(F, m):
    """The canonically first element of exact multiplicative order m."""
    if m < 1 or (F.q - 1) % m:
        raise NoSuchRoot(f"{m} does not divide {F.q} - 1")
    if m == 1:
        return F.one()
    key = (F, m)
    if key in _roots_of_unity:
        return FieldElement(F, _roots_of_unity[key])
    cofactor = (F.q - 1) // m
    for h in F.iter_raw():
        if h == F.zero_raw:
            continue
        z = FieldElement(F, F.pow(h, cofactor))
        if has_exact_order(z, m):
            prims = [z**k for k in range(1, m) if gcd(k, m) == 1]
            z = min(prims, key=FieldElement.sort_key)
            with _lock:
                _roots_of_unity[key] = z.c
            return z
    raise InternalError(f"no element of order {m} found in {F!r}")


def _embedding_root(source, target):
    key = (source, target)
    root = _embed_roots.get(key)
    if root is not None:
        return root
    if target.q > EMBED_SEARCH_BOUND:
        raise FieldTooLarge(f"root search in {target!r} exceeds bound")
    mod = [target.from_int(c) for c in source.modulus]
    for r in target.iter_raw():
        acc = target.zero_raw
        for c in reversed(mod):
            acc = target.add(target.mul(acc, r), c)
        if acc == target.zero_raw:
            with _lock:
                _embed_roots[key] = r
            return r
    raise InternalError(f"modulus of {source!r} has no root in {target!r}")


def embed(a, target):
    """Image of a in the extension ``target`` (a field homomorphism)."""
    source = a.field
    if source is target or source == target:
        return FieldElement(target, a.c)
    if source.p != target.p or target.n % source.n:
        raise NoEmbedding(f"{source!r} does not embed in {target!r}")
    if source.n == 1:
        return FieldElement(target, target.from_int(a.c))
    r = _embedding_root(source, target)
    acc = target.zero_raw
    for c in reversed(a.c):
        acc = target.add(target.mul(acc, r), target.from_int(c))
    return FieldElement(target, acc)


def restrict(b, subfield):
    """Inverse of :func:`embed`: the element of ``subfield`` mapping to b."""
    F = b.field
    if subfield == F:
        return FieldElement(subfield, b.c)
    if subfield.n == 1:
        if any(b.c[1:]):
            raise InternalError(f"{b!r} does not lie in {subfield!r}")
        return FieldElement(subfield, b.c[0])
    for s in subfield.elements():
        if embed(s, F).c == b.c:
            return s
    raise InternalError(f"{b!r} does not lie in {subfield!r}")


def element_from_json(F, data):
    return F(data)
