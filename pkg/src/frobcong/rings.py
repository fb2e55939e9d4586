"""Coefficient rings: exact integers, prime fields, and explicit extension fields.

Ring objects carry arithmetic; elements stay plain (Python int for the
integers and for GF(l), FFElement for GF(l^d)).  Extension fields are
constructed from an explicit monic modulus polynomial whose irreducibility
is checked at construction time.
"""

from __future__ import annotations

from .arith import factorint, is_prime


# ---------------------------------------------------------------------------
# polynomial arithmetic over GF(l), coefficient tuples low-to-high


def _ptrim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _padd(a, b, ell):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % ell
                   for i in range(n)])


def _psub(a, b, ell):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % ell
                   for i in range(n)])


def _pmul(a, b, ell):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % ell
    return _ptrim(out)


def _pdivmod(a, b, ell):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, ell)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % ell
        if c:
            c = c * inv_lb % ell
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % ell
    return _ptrim(q), _ptrim(a)


def _pmod(a, b, ell):
    return _pdivmod(a, b, ell)[1]


def _ppowmod(a, e, mod, ell):
    result = (1,)
    a = _pmod(a, mod, ell)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, ell), mod, ell)
        a = _pmod(_pmul(a, a, ell), mod, ell)
        e >>= 1
    return result


def _pgcd(a, b, ell):
    while b:
        a, b = b, _pmod(a, b, ell)
    if a:
        inv = pow(a[-1], -1, ell)
        a = tuple(c * inv % ell for c in a)
    return a


def _pinvmod(a, mod, ell):
    """Inverse of a modulo mod over GF(ell), via extended Euclid."""
    r0, r1 = mod, _pmod(a, mod, ell)
    s0, s1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, ell)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, ell), ell)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], -1, ell)
    return _ptrim(tuple(x * c % ell for x in s0))


def poly_is_irreducible(coeffs, ell) -> bool:
    """Irreducibility over GF(ell) of the polynomial with the given
    low-to-high coefficients, by the Rabin test."""
    f = _ptrim(tuple(c % ell for c in coeffs))
    d = len(f) - 1
    if d < 1:
        return False
    x = (0, 1)
    # x^(ell^d) == x mod f
    t = x
    for _ in range(d):
        t = _ppowmod(t, ell, f, ell)
    if _psub(t, x, ell):
        return False
    # gcd(x^(ell^(d/r)) - x, f) == 1 for prime r | d
    for r in factorint(d):
        t = x
        for _ in range(d // r):
            t = _ppowmod(t, ell, f, ell)
        if len(_pgcd(_psub(t, x, ell), f, ell)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# ring objects


class ExactIntegers:
    """The ring of integers; elements are Python ints."""

    char = 0
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {x!r} into ZZ")

    def is_zero(self, x):
        return x == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in ZZ")

    def __eq__(self, other):
        return isinstance(other, ExactIntegers)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "ZZ"


ZZ = ExactIntegers()


class PrimeField:
    """GF(ell); elements are Python ints in [0, ell)."""

    def __init__(self, ell: int):
        if not is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        self.ell = ell
        self.char = ell
        self.zero = 0
        self.one = 1 % ell

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.ell
        if isinstance(x, FFElement) and x.field.ell == self.ell and x.d == 1:
            return x.vec[0]
        raise TypeError(f"cannot coerce {x!r} into GF({self.ell})")

    def is_zero(self, x):
        return x == 0

    def add(self, a, b):
        return (a + b) % self.ell

    def sub(self, a, b):
        return (a - b) % self.ell

    def mul(self, a, b):
        return (a * b) % self.ell

    def neg(self, a):
        return (-a) % self.ell

    def inv(self, a):
        if a % self.ell == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return pow(a, -1, self.ell)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.ell == self.ell

    def __hash__(self):
        return hash(("GF", self.ell))

    def __repr__(self):
        return f"GF({self.ell})"


class ExtField:
    """GF(ell^d) presented as GF(ell)[x] modulo an explicit monic
    irreducible polynomial; elements are FFElement."""

    def __init__(self, ell: int, modulus):
        if not is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        modulus = tuple(int(c) % ell for c in modulus)
        modulus = _ptrim(modulus)
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not poly_is_irreducible(modulus, ell):
            raise ValueError(f"modulus {modulus} is reducible mod {ell}")
        self.ell = ell
        self.char = ell
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.order = ell ** self.d
        self.zero = FFElement(self, (0,) * self.d)
        self.one = FFElement(self, ((1,) + (0,) * (self.d - 1)))

    def element(self, vec):
        vec = tuple(int(c) % self.ell for c in vec)
        if len(vec) > self.d:
            vec = _pmod(vec, self.modulus, self.ell)
        vec = vec + (0,) * (self.d - len(vec))
        return FFElement(self, vec)

    def gen(self):
        """The class x of the polynomial variable."""
        if self.d == 1:
            return self.element(((-self.modulus[0]) % self.ell,))
        return self.element((0, 1))

    def gen_power(self, e: int):
        return self.gen() ** e

    def coerce(self, x):
        if isinstance(x, FFElement):
            if x.field == self:
                return x
            if x.field.d == 1 and x.field.ell == self.ell:
                return self.element((x.vec[0],))
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        if isinstance(x, int):
            return self.element((x,))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def is_zero(self, x):
        return not any(x.vec)

    def add(self, a, b):
        return FFElement(self, tuple((u + v) % self.ell for u, v in zip(a.vec, b.vec)))

    def sub(self, a, b):
        return FFElement(self, tuple((u - v) % self.ell for u, v in zip(a.vec, b.vec)))

    def mul(self, a, b):
        prod = _pmod(_pmul(_ptrim(a.vec), _ptrim(b.vec), self.ell), self.modulus, self.ell)
        return FFElement(self, prod + (0,) * (self.d - len(prod)))

    def neg(self, a):
        return FFElement(self, tuple((-u) % self.ell for u in a.vec))

    def inv(self, a):
        v = _pinvmod(_ptrim(a.vec), self.modulus, self.ell)
        return FFElement(self, v + (0,) * (self.d - len(v)))

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.ell == self.ell
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GFext", self.ell, self.modulus))

    def __repr__(self):
        return f"GF({self.ell}^{self.d})"


class FFElement:
    """Element of an ExtField: coefficient vector in the polynomial basis."""

    __slots__ = ("field", "vec")

    def __init__(self, field, vec):
        self.field = field
        self.vec = tuple(vec)

    @property
    def ell(self):
        return self.field.ell

    @property
    def d(self):
        return self.field.d

    def is_zero(self):
        return not any(self.vec)

    def _co(self, other):
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.sub(self, other)

    def __rsub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.sub(other, self)

    def __mul__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field.neg(self)

    def __truediv__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.mul(self, self.field.inv(other))

    def __rtruediv__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.mul(other, self.field.inv(self))

    def __pow__(self, e):
        if e < 0:
            return self.field.inv(self) ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = self.field.mul(result, base)
            base = self.field.mul(base, base)
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.vec == self.field.coerce(other).vec
        return (isinstance(other, FFElement) and other.field == self.field
                and other.vec == self.vec)

    def __hash__(self):
        return hash((self.field, self.vec))

    def __repr__(self):
        if self.d == 1 or not any(self.vec[1:]):
            return str(self.vec[0])
        terms = []
        for i, c in enumerate(self.vec):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if c == 1 else f"{c}*{xs}")
        return " + ".join(terms)

    def multiplicative_order(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.field.order - 1
        order = n
        for p in factorint(n):
            while order % p == 0 and self ** (order // p) == self.field.one:
                order //= p
        return order


def GF(ell: int, modulus=None):
    """GF(ell) when modulus is None, else GF(ell^deg(modulus))."""
    if modulus is None:
        return PrimeField(ell)
    return ExtField(ell, modulus)
