"""Arithmetic in GF(p^h) with quadratic character, trace, and Frobenius.

Elements are integer codes in [0, q).  The element with polynomial-basis
coordinates (c_0, ..., c_{h-1}) over the declared modulus has code
sum(c_i * p**i), so prime fields are plain integers mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 20
_TABLE_LIMIT = 512  # dense q x q add/mul tables below this order


class NotPrime(ValueError):
    pass


class ReducibleModulus(ValueError):
    pass


class QuadChar(Enum):
    ZERO = 0
    SQUARE = 1
    NONSQUARE = -1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Declared field: characteristic, degree, and monic irreducible modulus."""

    p: int
    h: int
    modulus: tuple[int, ...]  # ascending degree, length h+1, monic

    @property
    def q(self) -> int:
        return self.p**self.h

    def to_json(self) -> dict:
        return {"p": self.p, "h": self.h, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return cls(int(obj["p"]), int(obj["h"]), tuple(int(c) for c in obj["modulus"]))


def _poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _poly_divmod(num, den, p):
    """Polynomial division over GF(p); coefficient lists ascending, den monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * max(1, len(num) - dd)
    for k in range(len(num) - dd - 1, -1, -1):
        c = num[k + dd] % p
        if c:
            quot[k] = c
            for i, dc in enumerate(den):
                num[k + i] = (num[k + i] - c * dc) % p
    while len(num) > 1 and num[-1] % p == 0:
        num.pop()
    return quot, [c % p for c in num]

def _is_irreducible(mod, p):
    """Trial root/factor search: no root, then no monic factor of degree <= h/2."""
    h = len(mod) - 1
    if h == 1:
        return True
    for x in range(p):
        if _poly_eval(mod, x, p) == 0:
            return False
    if h <= 3:
        return True
    for d in range(2, h // 2 + 1):
        for n in range(p**d):
            den = _digits(n, p, d) + [1]
            _, rem = _poly_divmod(mod, den, p)
            if rem == [0]:
                return False
    return True


def _digits(n, p, h):
    out = []
    for _ in range(h):
        out.append(n % p)
        n //= p
    return out


def _auto_modulus(p, h):
    """Smallest monic irreducible of degree h, ordered by code of the low part."""
    for n in range(p**h):
        mod = tuple(_digits(n, p, h) + [1])
        if _is_irreducible(mod, p):
            return mod
    raise ReducibleModulus(f"no irreducible polynomial of degree {h} over GF({p})")


class GF:
    """The field GF(p^h).  Immutable after construction; all tables read-only."""

    def __init__(self, p: int, h: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if h < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**h
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds cap {MAX_ORDER}")
        if modulus is None:
            modulus = _auto_modulus(p, h)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != h + 1 or modulus[-1] != 1:
                raise ReducibleModulus("modulus must be monic of degree h")
            if not _is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.h = h
        self.q = q
        self.modulus = modulus
        self.spec = FieldSpec(p, h, modulus)
        self._reduction_rows = self._build_reduction_rows()
        self._exp, self._log = self._build_exp_log()
        self._add = None
        self._mul = None
        if q <= _TABLE_LIMIT:
            self._add = [[self.add(a, b) for b in range(q)] for a in range(q)]
            self._mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]

    # -- construction helpers ------------------------------------------------

    def _build_reduction_rows(self):
        # t^k for k in [h, 2h-2], reduced mod modulus, as digit vectors
        p, h, mod = self.p, self.h, self.modulus
        rows = {}
        cur = [(-c) % p for c in mod[:h]]  # t^h
        rows[h] = list(cur)
        for k in range(h + 1, 2 * h - 1):
            nxt = [0] + cur[: h - 1]
            top = cur[h - 1]
            if top:
                for i in range(h):
                    nxt[i] = (nxt[i] + top * rows[h][i]) % p
            cur = [c % p for c in nxt]
            rows[k] = list(cur)
        return rows

    def _raw_mul(self, a: int, b: int) -> int:
        p, h = self.p, self.h
        if h == 1:
            return (a * b) % p
        da, db = _digits(a, p, h), _digits(b, p, h)
        conv = [0] * (2 * h - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    conv[i + j] += ca * cb
        res = [c % p for c in conv[:h]]
        for k in range(h, 2 * h - 1):
            c = conv[k] % p
            if c:
                row = self._reduction_rows[k]
                for i in range(h):
                    res[i] = (res[i] + c * row[i]) % p
        code = 0
        for i in range(h - 1, -1, -1):
            code = code * p + res[i]
        return code

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        base = a
        while e:
            if e & 1:
                r = self._raw_mul(r, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return r

    def _build_exp_log(self):
        q = self.q
        rads = prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            if all(self._raw_pow(g, (q - 1) // r) != 1 for r in rads):
                gen = g
                break
        if gen is None:  # q == 2
            gen = 1
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._raw_mul(exp[i - 1], gen)
        log = [-1] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.generator = gen
        return exp, log

    def _mul_slow(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    # -- arithmetic ------------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        if self.h == 1:
            return (a + b) % self.p
        p, code, mul = self.p, 0, 1
        for _ in range(self.h):
            code += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return code

    def neg(self, a: int) -> int:
        if self.h == 1:
            return (-a) % self.p
        p, code, mul = self.p, 0, 1
        for _ in range(self.h):
            code += ((-a) % p) * mul
            a //= p
            mul *= p
        return code

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def quad_char(self, a: int) -> QuadChar:
        """Three-way quadratic character; every nonzero element of a field of
        even order counts as a square."""
        if a == 0:
            return QuadChar.ZERO
        if self.q % 2 == 0:
            return QuadChar.SQUARE
        return QuadChar.SQUARE if self._log[a] % 2 == 0 else QuadChar.NONSQUARE

    def is_square(self, a: int) -> bool:
        return self.quad_char(a) is not QuadChar.NONSQUARE

    def squares(self) -> set[int]:
        return {self.mul(x, x) for x in range(1, self.q)}

    def smallest_nonsquare(self) -> int:
        for a in range(1, self.q):
            if self.quad_char(a) is QuadChar.NONSQUARE:
                return a
        raise ValueError("no non-square: field of even order")

    def frobenius(self, a: int) -> int:
        return self.pow_(a, self.p) if a else 0

    def trace(self, a: int) -> int:
        acc, cur = a, a
        for _ in range(self.h - 1):
            cur = self.frobenius(cur)
            acc = self.add(acc, cur)
        return acc

    # -- dense tables (numpy, for vectorised callers) ---------------------------

    @property
    def add_table(self) -> np.ndarray:
        if self._add is None:
            raise ValueError(f"dense tables are kept to q <= {_TABLE_LIMIT}")
        if self._add_np is None:
            self._add_np = np.array(self._add, dtype=np.int64)
        return self._add_np

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul is None:
            raise ValueError(f"dense tables are kept to q <= {_TABLE_LIMIT}")
        if self._mul_np is None:
            self._mul_np = np.array(self._mul, dtype=np.int64)
        return self._mul_np

    _add_np = None
    _mul_np = None

    def __repr__(self):
        return f"GF({self.p}^{self.h}, modulus={list(self.modulus)})" if self.h > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


@lru_cache(maxsize=None)
def _cached_field(p: int, h: int, modulus) -> GF:
    return GF(p, h, modulus)


def field_new(p: int, h: int = 1, modulus=None) -> GF:
    """Field factory; Auto modulus picks the smallest monic irreducible.

    Cached, so repeated lookups share the same table set.
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_field(p, h, modulus)


def field_for_order(q: int) -> GF:
    """GF(q) for a prime power q, with the auto-selected modulus."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            h = 0
            m = q
            while m % p == 0:
                m //= p
                h += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return field_new(p, h)
    raise ValueError(f"{q} is not a prime power")
