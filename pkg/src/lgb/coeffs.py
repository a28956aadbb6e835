"""Exact arithmetic in valued coefficient fields.

Supported fields: the rationals with the trivial valuation, the rationals
with a p-adic valuation, and finite fields F_{p^k} (valuation identically
zero on nonzero elements).  Rationals are stored as ``fractions.Fraction``
(always in lowest terms, positive denominator); finite-field elements are
coefficient vectors over F_p reduced modulo a fixed defining polynomial.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction or mixed-field arithmetic."""


class _PlusInfinity:
    """Singleton +infinity, used as the valuation of zero."""

    __slots__ = ()

    def __repr__(self):
        return "+inf"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INF

    def __gt__(self, other):
        return other is not INF

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _PlusInfinity()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- dense polynomials over F_p, little-endian coefficient lists ------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        c = (a[-1] * inv_lb) % p
        q[da - db] = c
        for i, bi in enumerate(b):
            a[da - db + i] = (a[da - db + i] - c * bi) % p
        _ptrim(a)
    return _ptrim(q), a


def _pinv(a, modulus, p):
    """Inverse of a modulo the defining polynomial, by extended Euclid."""
    r0, r1 = list(modulus), _ptrim(list(a))
    if not r1:
        raise ZeroDivisionError("inverse of zero in a finite field")
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        qt = _pmul(q, t1, p)
        t2 = [(x - y) % p for x, y in _zipext(t0, qt)]
        t0, t1 = t1, _ptrim(t2)
    # r0 is the gcd, a nonzero constant since the modulus is irreducible
    c = pow(r0[0], -1, p)
    return _ptrim([(x * c) % p for x in t0])


def _zipext(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _irreducible(modulus, p) -> bool:
    """Brute-force factor search; adequate for p**k <= 10**4."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        return False
    for d in range(1, k // 2 + 1):
        # all monic candidate divisors of degree d
        for idx in range(p ** d):
            cand = []
            m = idx
            for _ in range(d):
                cand.append(m % p)
                m //= p
            cand.append(1)
            _, rem = _pdivmod(list(modulus), cand, p)
            if not rem:
                return False
    return k >= 1


#: defining polynomials for the small built-in extension fields,
#: little-endian with leading coefficient 1
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),      # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),   # t^3 + t + 1
    (3, 2): (2, 1, 1),      # t^2 + t + 2
    (5, 2): (1, 1, 1),      # t^2 + t + 1
    (3, 3): (1, 2, 0, 1),   # t^3 + 2t + 1
}


class FieldSpec:
    """A coefficient field together with its valuation.

    Kinds: ``rational`` (trivial valuation), ``padic`` (rationals with the
    p-adic valuation), ``finite`` (F_{p^k}, trivial valuation).
    """

    __slots__ = ("kind", "p", "k", "modulus", "_reduce_rows")

    def __init__(self, kind: str, p: int = 0, k: int = 1, modulus=None):
        if kind not in ("rational", "padic", "finite"):
            raise FieldError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = None
        self._reduce_rows = None
        if kind == "rational":
            self.p = 0
            self.k = 1
        elif kind == "padic":
            if not _is_prime(p):
                raise FieldError(f"{p} is not prime")
            self.k = 1
        else:
            if not _is_prime(p):
                raise FieldError(f"{p} is not prime")
            if k < 1:
                raise FieldError("extension degree must be >= 1")
            if k == 1:
                if modulus is not None:
                    raise FieldError("prime fields take no defining polynomial")
            else:
                if modulus is None:
                    try:
                        modulus = BUILTIN_MODULI[(p, k)]
                    except KeyError:
                        raise FieldError(
                            f"no built-in defining polynomial for GF({p}^{k}); "
                            "pass one explicitly"
                        ) from None
                modulus = tuple(int(c) % p for c in modulus[:-1]) + (1,)
                if len(modulus) != k + 1:
                    raise FieldError("defining polynomial must be monic of degree k")
                if p ** k <= 10 ** 4 and not _irreducible(modulus, p):
                    raise FieldError(f"defining polynomial {modulus} is reducible over F_{p}")
                self.modulus = modulus
                # reduction table for t^k .. t^(2k-2)
                rows = []
                cur = [(-c) % p for c in modulus[:-1]]
                rows.append(tuple(cur))
                for _ in range(k - 2):
                    cur = [0] + cur
                    carry = cur.pop()
                    cur = [(cur[i] + carry * rows[0][i]) % p for i in range(k)]
                    rows.append(tuple(cur))
                self._reduce_rows = tuple(rows)

    # ------------------------------------------------------------------
    @staticmethod
    def rational() -> "FieldSpec":
        return FieldSpec("rational")

    @staticmethod
    def padic(p: int) -> "FieldSpec":
        return FieldSpec("padic", p)

    @staticmethod
    def finite(p: int, k: int = 1, modulus=None) -> "FieldSpec":
        return FieldSpec("finite", p, k, modulus)

    # ------------------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.k, self.modulus))

    def __repr__(self):
        if self.kind == "rational":
            return "Q"
        if self.kind == "padic":
            return f"Q({self.p}-adic)"
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    # -- element constructors ------------------------------------------
    def zero(self) -> "Coefficient":
        if self.is_finite:
            return Coefficient(self, (0,) * self.k)
        return Coefficient(self, Fraction(0))

    def one(self) -> "Coefficient":
        return self.from_int(1)

    def from_int(self, m: int) -> "Coefficient":
        if self.is_finite:
            return Coefficient(self, (m % self.p,) + (0,) * (self.k - 1))
        return Coefficient(self, Fraction(m))

    def from_fraction(self, fr: Fraction) -> "Coefficient":
        fr = Fraction(fr)
        if self.is_finite:
            num = fr.numerator % self.p
            den = fr.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            val = (num * pow(den, -1, self.p)) % self.p
            return Coefficient(self, (val,) + (0,) * (self.k - 1))
        return Coefficient(self, fr)

    def element(self, vector) -> "Coefficient":
        """Finite-field element from a coefficient vector over F_p."""
        if not self.is_finite:
            raise FieldError("element vectors only apply to finite fields")
        vec = [int(c) % self.p for c in vector]
        if len(vec) > self.k:
            raise FieldError("vector longer than the extension degree")
        vec += [0] * (self.k - len(vec))
        return Coefficient(self, tuple(vec))

    def generator(self) -> "Coefficient":
        """The residue of t in F_{p^k} = F_p[t]/(modulus)."""
        if not self.is_finite or self.k == 1:
            raise FieldError("only proper extension fields have a generator")
        return self.element((0, 1))


class Coefficient:
    """An element of a :class:`FieldSpec`, canonical and immutable."""

    __slots__ = ("spec", "payload", "_val")

    def __init__(self, spec: FieldSpec, payload):
        self.spec = spec
        self.payload = payload
        self._val = None

    # ------------------------------------------------------------------
    def _check(self, other: "Coefficient") -> None:
        if not isinstance(other, Coefficient):
            raise FieldError(f"expected a Coefficient, got {type(other).__name__}")
        if self.spec != other.spec:
            raise FieldError(f"mixed fields: {self.spec} and {other.spec}")

    def is_zero(self) -> bool:
        if self.spec.is_finite:
            return not any(self.payload)
        return self.payload == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, Coefficient)
            and self.spec == other.spec
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((self.spec, self.payload))

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        self._check(other)
        spec = self.spec
        if spec.is_finite:
            p = spec.p
            return Coefficient(spec, tuple((a + b) % p for a, b in zip(self.payload, other.payload)))
        return Coefficient(spec, self.payload + other.payload)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        spec = self.spec
        if spec.is_finite:
            p = spec.p
            return Coefficient(spec, tuple((-a) % p for a in self.payload))
        return Coefficient(spec, -self.payload)

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        if not spec.is_finite:
            return Coefficient(spec, self.payload * other.payload)
        p, k = spec.p, spec.k
        if k == 1:
            return Coefficient(spec, ((self.payload[0] * other.payload[0]) % p,))
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(self.payload):
            if ai:
                for j, bj in enumerate(other.payload):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        out = prod[:k]
        for d in range(k, 2 * k - 1):
            c = prod[d]
            if c:
                row = spec._reduce_rows[d - k]
                out = [(out[i] + c * row[i]) % p for i in range(k)]
        return Coefficient(spec, tuple(out))

    def inv(self) -> "Coefficient":
        spec = self.spec
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if not spec.is_finite:
            return Coefficient(spec, 1 / self.payload)
        p, k = spec.p, spec.k
        if k == 1:
            return Coefficient(spec, (pow(self.payload[0], -1, p),))
        vec = _pinv(list(self.payload), list(spec.modulus), p)
        vec += [0] * (k - len(vec))
        return Coefficient(spec, tuple(vec))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    # ------------------------------------------------------------------
    def valuation(self):
        """Valuation in Q plus the distinguished +inf for zero."""
        if self._val is not None:
            return self._val
        if self.is_zero():
            self._val = INF
            return INF
        spec = self.spec
        if spec.kind != "padic":
            self._val = Fraction(0)
            return self._val
        p = spec.p
        num, den = self.payload.numerator, self.payload.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        self._val = Fraction(v)
        return self._val

    def __repr__(self):
        if self.spec.is_finite:
            return f"{self.payload}@{self.spec!r}"
        return f"{self.payload}"


# -- free-function aliases for the operation surface -------------------------

def field_ops(a: Coefficient, b: Coefficient, op: str) -> Coefficient:
    """One entry point for the field arithmetic family."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise FieldError(f"unknown field operation {op!r}")


def coeff_valuation(a: Coefficient):
    return a.valuation()
