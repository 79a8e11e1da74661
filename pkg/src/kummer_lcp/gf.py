"""Exact arithmetic in GF(p^k).

Elements are stored as integer codes: the coordinate vector
``(c_0, ..., c_{k-1})`` with respect to the power basis of the modulus maps
to ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  Enumerating codes in increasing
order therefore walks the coordinates as a base-p counter, low degree first.

Fields of moderate order carry exp/log/Zech tables, built lazily, which back
both scalar arithmetic and the vectorised helpers used by the linear-algebra
kernels.  Larger fields (up to 2^63 elements) fall back to polynomial
arithmetic on coordinate lists.
"""

from __future__ import annotations

import functools
import itertools
import random
from math import gcd

import numpy as np
import sympy

from . import config

__all__ = [
    "FiniteField",
    "FieldElement",
    "FieldError",
    "BudgetError",
    "field_create",
    "nth_roots",
    "element_enumerate",
    "is_irreducible",
    "monic_irreducibles",
]

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
_MAX_ORDER = 2**63


class FieldError(ValueError):
    """Invalid field construction or operand mismatch."""


class BudgetError(RuntimeError):
    """An enumeration or table would exceed the configured budget."""


# ---------------------------------------------------------------------------
# polynomials over GF(p) as ascending coefficient lists
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _gf2_mulmod(a, b, mod, k):
    top = 1 << k
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


def _gf2_gcd(a, b):
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _gf2_irreducible(mod, k):
    # x^(2^j) by repeated squaring, all reductions mod `mod`
    def frob(j):
        y = 2
        for _ in range(j):
            y = _gf2_mulmod(y, y, mod, k)
        return y

    if frob(k) != 2:
        return False
    for r in sympy.primefactors(k):
        if _gf2_gcd(mod, frob(k // r) ^ 2) != 1:
            return False
    return True


def is_irreducible(poly, p):
    """Rabin's test for a monic polynomial (ascending coefficients) over GF(p)."""
    poly = _trim(list(poly))
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if poly[0] == 0:
        return False
    if p == 2:
        if sum(poly) % 2 == 0:
            return False
        return _gf2_irreducible(sum(c << i for i, c in enumerate(poly)), k)
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, poly, p), x, p):
        return False
    for r in sympy.primefactors(k):
        h = _psub(_ppowmod(x, p ** (k // r), poly, p), x, p)
        if len(_pgcd(poly, h, p)) != 1:
            return False
    return True


def monic_irreducibles(p, k):
    """Yield monic irreducible polynomials of degree k, smallest first.

    Order is lexicographic on ``(c_0, c_1, ..., c_{k-1})`` with the constant
    term compared first.
    """
    if k == 1:
        for c in range(p):
            yield [c, 1]
        return
    for c0 in range(1, p):
        for middle in itertools.product(range(p), repeat=k - 1):
            poly = [c0, *middle, 1]
            if is_irreducible(poly, p):
                yield poly


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class FiniteField:
    """GF(p^k) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not isinstance(p, int) or not sympy.isprime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if not isinstance(k, int) or k < 1:
            raise FieldError(f"extension degree must be a positive integer, got {k!r}")
        if p**k > _MAX_ORDER:
            raise FieldError(f"field order {p}^{k} exceeds 2^63")
        if k == 1:
            # prime fields use plain residues; the modulus is the formal x
            if modulus not in (None, [0, 1], (0, 1)):
                raise FieldError("prime fields take no modulus")
            modulus = [0, 1]
        elif modulus is None:
            modulus = next(monic_irreducibles(p, k))
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {k}")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p**k
        self._tables = None

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __len__(self):
        return self.order

    @property
    def characteristic(self):
        return self.p

    def descriptor(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_descriptor(cls, d):
        k = int(d.get("k", 1))
        modulus = d.get("modulus")
        if k == 1:
            modulus = None
        return field_create(int(d["p"]), k, modulus)

    # -- element construction -----------------------------------------------

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to another field")
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, value % self.p)
            return FieldElement(self, value % self.p)  # integers embed via the prime field
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.encode(value))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise FieldError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        """The class of x in GF(p)[x]/(modulus); for prime fields this is 0."""
        return FieldElement(self, self.p % self.order if self.k > 1 else 0)

    def encode(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.k:
            raise FieldError(f"expected at most {self.k} coordinates")
        code = 0
        for c in reversed(coords):
            code = code * self.p + (int(c) % self.p)
        return code

    def decode(self, code: int) -> list:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    # -- serialisation --------------------------------------------------------

    def format(self, code: int) -> str:
        digits = self.decode(code)
        if self.p <= len(_DIGITS):
            return "".join(_DIGITS[d] for d in digits)
        return ".".join(str(d) for d in digits)

    def parse(self, text: str) -> "FieldElement":
        text = text.strip()
        if self.p <= len(_DIGITS):
            if len(text) != self.k:
                raise FieldError(f"expected {self.k} base-{self.p} digits, got {text!r}")
            digits = [_DIGITS.index(ch) for ch in text.lower()]
        else:
            digits = [int(t) for t in text.split(".")]
            if len(digits) != self.k:
                raise FieldError(f"expected {self.k} coordinates, got {text!r}")
        if any(d >= self.p for d in digits):
            raise FieldError(f"digit out of range in {text!r}")
        return FieldElement(self, self.encode(digits))

    # -- code-level scalar arithmetic ------------------------------------------

    def _poly_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            return self._binary_mul(a, b)
        prod = _pmul(self.decode(a), self.decode(b), self.p)
        return self.encode(_pmod(prod, list(self.modulus), self.p) + [])

    def _binary_mul(self, a: int, b: int) -> int:
        mod = sum(c << i for i, c in enumerate(self.modulus))
        top = 1 << self.k
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return r

    def add_c(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self.tables
        if t is not None:
            return int(t.add_scalar(a, b))
        return self.encode([(x + y) % self.p for x, y in zip(self.decode(a), self.decode(b))])

    def neg_c(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.encode([(-x) % self.p for x in self.decode(a)])

    def sub_c(self, a: int, b: int) -> int:
        return self.add_c(a, self.neg_c(b))

    def mul_c(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self.tables
        if t is not None:
            return int(t.exp[t.log[a] + t.log[b]])
        return self._poly_mul(a, b)

    def inv_c(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        t = self.tables
        if t is not None:
            return int(t.exp[(t.qm1 - t.log[a]) % t.qm1])
        return self.pow_c(a, self.order - 2)

    def pow_c(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_c(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        t = self.tables
        if t is not None:
            return int(t.exp[(int(t.log[a]) * e) % t.qm1])
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return result

    # -- tables -----------------------------------------------------------------

    @property
    def tables(self):
        """Exp/log/Zech tables, or None when the field exceeds the table budget."""
        if self._tables is None:
            if self.order > config.TABLE_BUDGET:
                return None
            self._tables = FieldTables.build(self)
        return self._tables

    def require_tables(self):
        t = self.tables
        if t is None:
            raise BudgetError(
                f"{self!r} has {self.order} elements, above the table budget {config.TABLE_BUDGET}"
            )
        return t

    @functools.cached_property
    def multiplicative_factors(self):
        return sorted(sympy.factorint(self.order - 1))

    def is_primitive_c(self, a: int) -> bool:
        if a == 0:
            return False
        qm1 = self.order - 1
        return all(self.pow_c(a, qm1 // r) != 1 for r in self.multiplicative_factors)

    @functools.cached_property
    def primitive_code(self) -> int:
        """Smallest code generating the multiplicative group."""
        if self.order == 2:
            return 1
        for c in range(2 if self.k == 1 else self.p, self.order):
            if self._generator_test(c):
                return c
        for c in range(1, self.order):  # pragma: no cover - k == 1 small fields
            if self._generator_test(c):
                return c
        raise AssertionError("no generator found")  # pragma: no cover

    def _generator_test(self, c):
        qm1 = self.order - 1
        saved, self._tables = self._tables, None
        try:
            if c == 0:
                return False
            for r in self.multiplicative_factors:
                if self._raw_pow(c, qm1 // r) == 1:
                    return False
            return True
        finally:
            self._tables = saved

    def _raw_pow(self, a, e):
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return result

    def mul_matrix(self, c: int) -> np.ndarray:
        """k x k matrix over GF(p) of multiplication by c on coordinate rows."""
        rows = []
        basis = 1
        for _ in range(self.k):
            rows.append(self.decode(self._raw_mul(basis, c)))
            basis = self._raw_mul(basis, self.p if self.k > 1 else 1)
        return np.array(rows, dtype=np.int64)

    def _raw_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        return self._poly_mul(a, b)

    # -- vectorised helpers on code arrays ----------------------------------------

    def vadd(self, a, b):
        return self.require_tables().add(a, b)

    def vmul(self, a, b):
        return self.require_tables().mul(a, b)

    def vneg(self, a):
        return self.require_tables().neg(a)

    def vsub(self, a, b):
        t = self.require_tables()
        return t.add(a, t.neg(b))

    # -- enumeration ----------------------------------------------------------------

    def elements(self):
        return element_enumerate(self)

    def subfield_codes(self, d: int) -> list:
        """Codes of the subfield GF(p^d): the fixed points of a -> a^(p^d)."""
        if self.k % d:
            raise FieldError(f"GF({self.p}^{d}) is not a subfield of {self!r}")
        sub_order = self.p**d
        t = self.tables
        if t is not None:
            step = (self.order - 1) // (sub_order - 1)
            return sorted([0] + [int(t.exp[i]) for i in range(0, self.order - 1, step)])
        return sorted([0] + [y.code for y in nth_roots(self.one, sub_order - 1)])


class FieldTables:
    """Exp/log/Zech tables over the multiplicative group of a field.

    ``exp`` has length 2(q-1) so sums of two logs index it without reduction.
    ``log[0]`` is -1.  ``zech[d]`` is log(1 + g^d), or -1 when 1 + g^d = 0.
    """

    __slots__ = ("q", "p", "qm1", "exp", "log", "zech", "neg_log", "generator")

    def __init__(self, q, p, exp, log, zech, neg_log, generator):
        self.q = q
        self.p = p
        self.qm1 = q - 1
        self.exp = exp
        self.log = log
        self.zech = zech
        self.neg_log = neg_log
        self.generator = generator

    @classmethod
    def build(cls, field: FiniteField) -> "FieldTables":
        q, p, k = field.order, field.p, field.k
        qm1 = q - 1
        g = field.primitive_code
        powers = np.array([p**i for i in range(k)], dtype=np.int64)
        # doubling: digits of g^0..g^(B-1), then multiply the block by g^B
        digits = np.zeros((1, k), dtype=np.int64)
        digits[0, 0] = 1
        block_gen = g
        while digits.shape[0] < qm1:
            nxt = (digits @ field.mul_matrix(block_gen)) % p
            digits = np.vstack([digits, nxt])
            block_gen = field._raw_mul(block_gen, block_gen)
        exp1 = (digits[:qm1] @ powers).astype(np.int64)
        exp = np.concatenate([exp1, exp1])
        log = np.full(q, -1, dtype=np.int64)
        log[exp1] = np.arange(qm1, dtype=np.int64)
        if np.any(log[1:] < 0):
            raise AssertionError("generator does not span the multiplicative group")
        # 1 + g^d: bump the constant digit
        low = exp1 % p
        one_plus = np.where(low == p - 1, exp1 - (p - 1), exp1 + 1)
        zech = np.where(one_plus == 0, -1, log[one_plus]).astype(np.int64)
        neg_log = 0 if p == 2 else qm1 // 2
        return cls(q, p, exp, log, zech, neg_log, g)

    def add_scalar(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self.log[a], self.log[b]
        z = self.zech[(lb - la) % self.qm1]
        if z < 0:
            return 0
        return self.exp[la + z]

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        la = self.log[a]
        lb = self.log[b]
        d = (lb - la) % self.qm1
        z = self.zech[d]
        res = np.where(z < 0, 0, self.exp[np.where(z < 0, 0, la + z) % (2 * self.qm1)])
        res = np.where(a == 0, b, np.where(b == 0, a, res))
        return res.astype(np.int64)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        zero = (a == 0) | (b == 0)
        res = self.exp[np.where(zero, 0, self.log[a] + self.log[b])]
        return np.where(zero, 0, res).astype(np.int64)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        res = self.exp[np.where(a == 0, 0, self.log[a] + self.neg_log)]
        return np.where(a == 0, 0, res).astype(np.int64)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.qm1 - self.log[a]) % self.qm1].astype(np.int64)

    def pow(self, a, e):
        """Elementwise a**e for integer arrays a (codes) and e (exponents >= 0)."""
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        a, e = np.broadcast_arrays(a, e)
        res = self.exp[(self.log[np.where(a == 0, 1, a)] * e) % self.qm1]
        res = np.where(a == 0, np.where(e == 0, 1, 0), res)
        return res.astype(np.int64)


@functools.lru_cache(maxsize=None)
def _cached_field(p, k, modulus):
    return FiniteField(p, k, list(modulus) if modulus is not None else None)


def field_create(p: int, k: int = 1, modulus=None) -> FiniteField:
    """Return GF(p^k), cached per (p, k, modulus).

    Without an explicit modulus the lexicographically smallest monic
    irreducible polynomial (constant term compared first) is used.
    """
    if isinstance(p, bool) or not isinstance(p, int) or not isinstance(k, int) or isinstance(k, bool):
        raise FieldError("p and k must be integers")
    if k < 1:
        raise FieldError(f"extension degree must be positive, got {k}")
    if not sympy.isprime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if p**k > _MAX_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds 2^63")
    key = tuple(int(c) for c in modulus) if modulus is not None and k > 1 else None
    return _cached_field(p, k, key)


class FieldElement:
    """Immutable element of a FiniteField."""

    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.code))

    @property
    def coords(self):
        return self.field.decode(self.code)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field operands {self.field!r} and {other.field!r}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add_c(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_c(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_c(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_c(self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_c(self.code, b))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field.inv_c(self.code))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_c(self.code, self.field.inv_c(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_c(b, self.field.inv_c(self.code)))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return FieldElement(self.field, self.field.pow_c(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.code)!r})"

    def __str__(self):
        return self.field.format(self.code)

    def is_zero(self):
        return self.code == 0


def element_enumerate(field: FiniteField, budget: int | None = None):
    """Yield every element once, codes in increasing order."""
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    if field.order > budget:
        raise BudgetError(f"{field!r} has {field.order} elements, budget is {budget}")
    for code in range(field.order):
        yield FieldElement(field, code)


def nth_roots(c: FieldElement, n: int, seed: int = 0) -> list:
    """All y in the field of c with y**n == c, sorted by code.

    c = 0 gives [0].  For c != 0 the count is 0 or gcd(n, q - 1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    field = c.field
    if c.code == 0:
        return [field.zero]
    qm1 = field.order - 1
    d = gcd(n, qm1)
    t = field.tables
    if t is not None:
        L = int(t.log[c.code])
        if L % d:
            return []
        step = qm1 // d
        e0 = (L // d) * pow(n // d, -1, step) % step if step > 1 else 0
        codes = sorted(int(t.exp[e0 + i * step]) for i in range(d))
        return [FieldElement(field, x) for x in codes]
    if c.code != 1:
        raise BudgetError(
            f"root extraction of a non-unit in {field!r} needs tables (order above budget)"
        )
    # roots of unity: z^((q-1)/d) is uniform on mu_d for uniform z
    rng = random.Random(seed)
    found = {1}
    tries = 0
    while len(found) < d:
        z = rng.randrange(1, field.order)
        found.add(field.pow_c(z, qm1 // d))
        tries += 1
        if tries > 64 * d + 1000:
            raise AssertionError("root-of-unity sampling did not converge")  # pragma: no cover
    return [FieldElement(field, x) for x in sorted(found)]
