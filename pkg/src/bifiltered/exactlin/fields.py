"""Coefficient fields: the rationals, prime fields and small extension fields.

Elements of a finite field of order q are stored as integer codes 0..q-1.  For a
prime field the code is the least residue.  For an extension field of degree k
the code sum(a_j * p**j) stands for the polynomial sum(a_j * x**j) modulo a fixed
monic irreducible polynomial, so x (code p) generates the field over its prime
subfield.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache

import numpy as np

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Common interface; concrete fields implement the array kernels."""

    order: int | None = None
    characteristic: int = 0
    degree: int = 1

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    def key(self):
        return ()

    @property
    def prime_field(self) -> "Field":
        return self

    # scalars
    def parse(self, token):
        raise NotImplementedError

    def format(self, x):
        raise NotImplementedError

    # arrays
    def zeros(self, shape):
        raise NotImplementedError

    def asarray(self, data):
        raise NotImplementedError

    def random_array(self, rng, shape, density: float = 1.0):
        raise NotImplementedError

    def elements(self):
        raise TypeError(f"{self} is infinite")


_numerator = np.frompyfunc(lambda x: x.numerator, 1, 1)
_denominator = np.frompyfunc(lambda x: x.denominator, 1, 1)


def _scaled_integers(a):
    """(integer object array n, common denominator d) with a = n / d."""
    dens = set(_denominator(a).reshape(-1).tolist()) if a.size else {1}
    d = math.lcm(*dens)
    nums = _numerator(a)
    if d == 1:
        return nums, 1
    scale = np.frompyfunc(lambda x: d // x.denominator, 1, 1)(a)
    return nums * scale, d


def _max_abs(a):
    return max((abs(int(x)) for x in a.reshape(-1)), default=0)


def _fraction_over(a, den):
    if den == 1:
        return np.frompyfunc(Fraction, 1, 1)(a)
    return np.frompyfunc(lambda x: Fraction(x, den), 1, 1)(a)


class Rationals(Field):
    dtype = object

    def __repr__(self):
        return "QQ"

    def one(self):
        return Fraction(1)

    def zero(self):
        return Fraction(0)

    def parse(self, token):
        if isinstance(token, bool):
            raise ValueError(f"not a rational: {token!r}")
        if isinstance(token, int):
            return Fraction(token)
        if isinstance(token, Fraction):
            return token
        if isinstance(token, str):
            m = _FRACTION_RE.match(token)
            if m:
                num, den = m.groups()
                if den is not None and int(den) == 0:
                    raise ValueError(f"zero denominator in {token!r}")
                return Fraction(int(num), int(den) if den else 1)
        raise ValueError(f"not a rational: {token!r}")

    def format(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def zeros(self, shape):
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def asarray(self, data):
        a = np.array(data, dtype=object)
        flat = a.reshape(-1)
        for i, x in enumerate(flat):
            flat[i] = self.parse(x) if not isinstance(x, Fraction) else x
        return a

    def identity(self, n):
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = Fraction(1)
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def scale(self, c, a):
        return a * self.parse(c) if not isinstance(c, Fraction) else a * c

    def matmul(self, a, b):
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        ia, da = _scaled_integers(a)
        ib, db = _scaled_integers(b)
        bound = _max_abs(ia) * _max_abs(ib) * a.shape[1]
        if bound < 2 ** 62:
            prod = (ia.astype(np.int64) @ ib.astype(np.int64)).astype(object)
        else:
            prod = ia.dot(ib)
        den = da * db
        out = _fraction_over(np.asarray(prod, dtype=object), den)
        return out.reshape(a.shape[0], b.shape[1])

    def random_array(self, rng, shape, density: float = 1.0):
        vals = rng.integers(-2, 3, size=shape)
        if density < 1.0:
            vals = vals * (rng.random(size=shape) < density)
        return self.asarray(vals.tolist() if vals.size else np.zeros(shape, dtype=int))

    def is_zero_array(self, a):
        return all(x == 0 for x in a.reshape(-1))


class PrimeField(Field):
    dtype = np.int64

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 1 << 31:
            raise ValueError("prime fields are limited to p < 2**31")
        self.p = p
        self.order = p
        self.characteristic = p

    def key(self):
        return (self.p,)

    def __repr__(self):
        return f"GF({self.p})"

    def one(self):
        return 1

    def zero(self):
        return 0

    def parse(self, token):
        if isinstance(token, (bool, float)) or not isinstance(token, (int, np.integer)):
            raise ValueError(f"entries over {self} must be integers, got {token!r}")
        return int(token) % self.p

    def format(self, x):
        return int(x)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def asarray(self, data):
        a = np.array(data, dtype=object)
        if a.size and not all(isinstance(x, (int, np.integer)) and not isinstance(x, bool)
                              for x in a.reshape(-1)):
            raise ValueError(f"entries over {self} must be integers")
        return np.array(a.astype(np.int64) if a.size else np.zeros(a.shape, dtype=np.int64)) % self.p

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def scale(self, c, a):
        return (int(c) % self.p * a) % self.p

    def inv(self, x):
        return pow(int(x), self.p - 2, self.p)

    def matmul(self, a, b):
        m, inner = a.shape
        n = b.shape[1]
        if inner == 0 or m == 0 or n == 0:
            return np.zeros((m, n), dtype=np.int64)
        chunk = max(1, (1 << 62) // ((self.p - 1) ** 2 or 1))
        if chunk >= inner:
            return (a @ b) % self.p
        out = np.zeros((m, n), dtype=np.int64)
        for s in range(0, inner, chunk):
            out = (out + a[:, s:s + chunk] @ b[s:s + chunk]) % self.p
        return out

    def random_array(self, rng, shape, density: float = 1.0):
        vals = rng.integers(0, self.p, size=shape, dtype=np.int64)
        if density < 1.0:
            vals = vals * (rng.random(size=shape) < density)
        return vals

    def is_zero_array(self, a):
        return not a.any()

    def elements(self):
        return range(self.p)


def _poly_mulmod(a, b, modulus, p):
    # coefficient lists, low degree first; modulus monic of degree k
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * modulus[j]) % p
    prod = prod[:k] + [0] * max(0, k - len(prod))
    return prod


def _digits(code, p, k):
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def _code(digits, p):
    return sum(int(d) * p ** j for j, d in enumerate(digits))


@lru_cache(maxsize=None)
def conway_like_modulus(p: int, k: int) -> tuple:
    """Smallest (in code order) monic irreducible polynomial of degree k whose root
    generates the multiplicative group."""
    q = p ** k
    for tail in itertools.product(range(p), repeat=k):
        modulus = list(reversed(tail))  # low degree first, without the leading 1
        if modulus[0] == 0:
            continue
        modulus = modulus + [1]
        # order of x must be q - 1
        x = [0, 1] + [0] * (k - 2)
        power = [1] + [0] * (k - 1)
        seen_one_at = None
        for e in range(1, q):
            power = _poly_mulmod(power, x, modulus, p)
            if all(c == 0 for c in power):
                break
            if power == [1] + [0] * (k - 1):
                seen_one_at = e
                break
        if seen_one_at == q - 1:
            return tuple(modulus)
    raise ValueError(f"no primitive polynomial of degree {k} over GF({p})")


@lru_cache(maxsize=None)
def _tables(p: int, k: int):
    q = p ** k
    modulus = list(conway_like_modulus(p, k))
    digits = [_digits(c, p, k) for c in range(q)]
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = _code([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
            mul[a, b] = _code(_poly_mulmod(digits[a], digits[b], modulus, p), p)
    neg = np.array([_code([(-x) % p for x in digits[a]], p) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return add, mul, neg, inv


class ExtensionField(Field):
    """GF(p**k) for k >= 2 with table arithmetic; intended for small orders."""

    dtype = np.int64

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 2:
            raise ValueError("use PrimeField for degree 1")
        if p ** k > 4096:
            raise ValueError("extension fields are limited to order <= 4096")
        self.p = p
        self.degree = k
        self.order = p ** k
        self.characteristic = p
        self.modulus = conway_like_modulus(p, k)
        self.add_table, self.mul_table, self.neg_table, self.inv_table = _tables(p, k)

    def key(self):
        return (self.p, self.degree)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    @property
    def prime_field(self):
        return PrimeField(self.p)

    @property
    def generator(self):
        return self.p

    def one(self):
        return 1

    def zero(self):
        return 0

    def parse(self, token):
        if isinstance(token, (bool, float)) or not isinstance(token, (int, np.integer)):
            raise ValueError(f"entries over {self} must be integer codes, got {token!r}")
        if not 0 <= int(token) < self.order:
            raise ValueError(f"code {token} out of range for {self}")
        return int(token)

    def format(self, x):
        return int(x)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def asarray(self, data):
        a = np.array(data, dtype=object)
        for x in a.reshape(-1):
            self.parse(x)
        return a.astype(np.int64) if a.size else np.zeros(a.shape, dtype=np.int64)

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def add(self, a, b):
        return self.add_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def scale(self, c, a):
        return self.mul_table[int(c), a]

    def inv(self, x):
        return int(self.inv_table[int(x)])

    def matmul(self, a, b):
        m, inner = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        for t in range(inner):
            col = a[:, t]
            if not col.any():
                continue
            out = self.add_table[out, self.mul_table[col[:, None], b[t][None, :]]]
        return out

    def random_array(self, rng, shape, density: float = 1.0):
        vals = rng.integers(0, self.order, size=shape, dtype=np.int64)
        if density < 1.0:
            vals = vals * (rng.random(size=shape) < density)
        return vals

    def is_zero_array(self, a):
        return not a.any()

    def elements(self):
        return range(self.order)

    def power(self, x, e):
        out = 1
        for _ in range(e):
            out = int(self.mul_table[out, x])
        return out


QQ = Rationals()


def GF(p: int, k: int = 1) -> Field:
    return PrimeField(p) if k == 1 else ExtensionField(p, k)
