"""Exact univariate polynomials over the rationals and prime fields.

Polynomials are dense coefficient tuples ordered constant-first, with no
trailing zeros (the zero polynomial is the empty tuple).  Rational
coefficients are :class:`fractions.Fraction`; prime-field coefficients are
ints in ``range(p)``.

Inside ideals every polynomial is kept in *canonical* form: the largest
power of ``x`` is divided out and the result is scaled monic.  Two
polynomials generate the same ideal of ``K[x, x^-1]`` exactly when their
canonical forms agree.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from sympy import isprime, nextprime

__all__ = [
    "DEFAULT_QDEG",
    "DegreeBoundError",
    "Field",
    "Poly",
    "PolyParseError",
    "QQ",
    "conjugate",
    "factor",
    "gcd",
    "is_irreducible",
    "is_squarefree",
    "lcm",
    "normalize",
    "parse_poly",
    "squarefree_decomposition",
    "squarefree_part",
]

#: Default degree bound for factorization over Q.
DEFAULT_QDEG = 12


class DegreeBoundError(ValueError):
    """Raised when a rational factorization exceeds the configured degree bound."""


class PolyParseError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``Field(0)`` is Q, ``Field(p)`` is F_p.

    Use :meth:`fp` for user-facing construction; it checks that ``p`` is a
    prime below 2**31.  The bare constructor is also used internally with
    large primes during rational factorization.
    """

    p: int = 0

    @classmethod
    def fp(cls, p: int) -> "Field":
        if not (2 <= p < 2**31) or not isprime(p):
            raise ValueError(f"F_p needs a prime p < 2^31, got {p}")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``Q``, ``QQ``, ``Fp:5``, ``F5``, ``GF(5)``."""
        t = text.strip().replace(" ", "")
        if t.upper() in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"(?:F[Pp]?:?|GF\(?)(\d+)\)?", t)
        if not m:
            raise ValueError(f"unknown field {text!r}")
        return cls.fp(int(m.group(1)))

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def coerce(self, a) -> Fraction | int:
        if self.p == 0:
            return Fraction(a)
        if isinstance(a, Fraction):
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return int(a) % self.p

    def inv(self, a):
        if self.p == 0:
            return 1 / a
        return pow(a, -1, self.p)

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"


QQ = Field(0)


@dataclass(frozen=True)
class Poly:
    field: Field
    coeffs: tuple = ()

    def __post_init__(self):
        c = [self.field.coerce(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # constructors

    @classmethod
    def const(cls, field: Field, a) -> "Poly":
        return cls(field, (a,))

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: Field, k: int, a=1) -> "Poly":
        return cls(field, (0,) * k + (a,))

    # basic accessors

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    # arithmetic

    def _same(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        return Poly.const(self.field, other)

    def __add__(self, other):
        other = self._same(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(self.field, tuple(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = F.inv(other.lc)
        if len(rem) <= db:
            return Poly(F), self
        quo = [0] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            q = F.coerce(rem[k] * inv_lc)
            if q == 0:
                continue
            quo[k - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] -= q * bj
            if F.p:
                for j in range(k - db, k + 1):
                    rem[j] %= F.p
        return Poly(F, tuple(quo)), Poly(F, tuple(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.inv(self.lc)
        return Poly(self.field, tuple(a * inv for a in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(self.field, tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def x_valuation(self) -> int:
        for i, a in enumerate(self.coeffs):
            if a != 0:
                return i
        raise ValueError("zero polynomial has no x-valuation")

    def __call__(self, value):
        acc = self.field.coerce(0)
        for a in reversed(self.coeffs):
            acc = acc * value + a
        return self.field.coerce(acc) if self.field.p else acc

    # presentation

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            neg = self.field.p == 0 and a < 0
            mag = -a if neg else a
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(("-" if neg else "") + body)
            else:
                terms.append(("- " if neg else "+ ") + body)
        text = " ".join(terms)
        if self.field.p:
            text += f" mod {self.field.p}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, field: Field, data: Sequence) -> "Poly":
        return cls(field, tuple(Fraction(str(a)) if field.p == 0 else _parse_fp(str(a), field)
                                for a in data))


def _parse_fp(text: str, field: Field) -> int:
    return field.coerce(Fraction(text))


# ---------------------------------------------------------------------------
# canonical form, gcd, square-free decomposition


def normalize(f: Poly) -> Poly:
    """Divide out the largest power of x and scale monic."""
    if f.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    k = f.x_valuation()
    return Poly(f.field, f.coeffs[k:]).monic()


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0)`` is 0."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly(f.field)
    return ((f * g) // gcd(f, g)).monic()


def conjugate(f: Poly, g: Poly) -> bool:
    """Equal up to a Laurent unit ``a*x^k``."""
    return normalize(f) == normalize(g)


def _pth_root(f: Poly) -> Poly:
    p = f.field.p
    return Poly(f.field, f.coeffs[::p])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Return ``[(g_i, i), ...]`` with ``f = lc * prod g_i^i``, the g_i square-free,
    monic, pairwise coprime and non-constant.  Sorted by multiplicity."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree <= 0:
        return []
    if f.field.p == 0:
        out = _yun(f)
    else:
        out = _sqf_fp(f)
    merged: dict[int, Poly] = {}
    for g, e in out:
        merged[e] = merged[e] * g if e in merged else g
    return sorted(((g.monic(), e) for e, g in merged.items()), key=lambda t: t[1])


def _yun(f: Poly) -> list[tuple[Poly, int]]:
    out = []
    df = f.derivative()
    a = gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _sqf_fp(f: Poly) -> list[tuple[Poly, int]]:
    p = f.field.p
    out = []
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        for g, e in _sqf_fp(_pth_root(c)):
            out.append((g, e * p))
    return out


def squarefree_part(f: Poly) -> Poly:
    parts = squarefree_decomposition(f)
    return reduce(lambda a, b: a * b, (g for g, _ in parts), Poly.const(f.field, 1))


def is_squarefree(f: Poly) -> bool:
    return all(e == 1 for _, e in squarefree_decomposition(f))


# ---------------------------------------------------------------------------
# factorization over F_p


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.const(base.field, 1)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    x = Poly.x(F)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = _powmod(h, F.p, f)
        g = gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    p = F.p
    while True:
        a = Poly(F, tuple(rng.randrange(p) for _ in range(f.degree)))
        if a.degree <= 0:
            continue
        if p == 2:
            t = a
            b = a
            for _ in range(d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = _powmod(a, (p**d - 1) // 2, f) - 1
        g = gcd(b, f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def _factor_squarefree_fp(f: Poly, rng: random.Random) -> list[Poly]:
    out = []
    for g, d in _distinct_degree(f.monic()):
        out.extend(_equal_degree(g, d, rng))
    return out


def _factor_fp(f: Poly, seed: int) -> list[tuple[Poly, int]]:
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(f):
        out.extend((h, e) for h in _factor_squarefree_fp(g, rng))
    return out


# ---------------------------------------------------------------------------
# factorization over Q (big prime + factor combination)


def _to_primitive_ints(f: Poly) -> list[int]:
    den = reduce(math.lcm, (a.denominator for a in f.coeffs), 1)
    ints = [int(a * den) for a in f.coeffs]
    g = reduce(math.gcd, ints)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def _ints_mod(ints: list[int], F: Field) -> Poly:
    return Poly(F, tuple(a % F.p for a in ints))


def _symmetric(a: int, p: int) -> int:
    a %= p
    return a - p if a > p // 2 else a


def _primitive(ints: list[int]) -> list[int]:
    g = reduce(math.gcd, ints)
    out = [a // g for a in ints]
    if out[-1] < 0:
        out = [-a for a in out]
    return out


def _exact_div_ints(a: list[int], b: list[int]) -> list[int] | None:
    """Quotient a/b over Z, or None if b does not divide a in Z[x]."""
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return None
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        q, r = divmod(rem[k], b[-1])
        if r:
            return None
        quo[k - db] = q
        for j, bj in enumerate(b):
            rem[k - db + j] -= q * bj
    if any(rem[:db]):
        return None
    return quo


def _good_prime(ints: list[int], start: int) -> int:
    p = start
    while True:
        p = nextprime(p)
        if ints[-1] % p == 0:
            continue
        f = _ints_mod(ints, Field(p))
        if gcd(f, f.derivative()).degree == 0:
            return p


def _factor_squarefree_zz(ints: list[int], seed: int) -> list[list[int]]:
    n = len(ints) - 1
    if n <= 1:
        return [ints]
    rng = random.Random(seed)
    # a few small primes: irreducible mod p settles it
    p = 2
    for _ in range(4):
        p = _good_prime(ints, p)
        if len(_factor_squarefree_fp(_ints_mod(ints, Field(p)), rng)) == 1:
            return [ints]
    lc = ints[-1]
    norm = math.isqrt(sum(a * a for a in ints)) + 1
    bound = 2 * abs(lc) * (2**n) * norm + 1
    p = _good_prime(ints, bound)
    F = Field(p)
    modular = _factor_squarefree_fp(_ints_mod(ints, F), rng)
    modular.sort(key=Poly.sort_key)
    found = []
    remaining = ints
    s = 1
    while 2 * s <= len(modular):
        hit = False
        for combo in itertools.combinations(range(len(modular)), s):
            lc_r = remaining[-1]
            prod = Poly.const(F, lc_r)
            for i in combo:
                prod = prod * modular[i]
            cand = _primitive([_symmetric(a, p) for a in prod.coeffs])
            quo = _exact_div_ints(remaining, cand)
            if quo is None:
                continue
            found.append(cand)
            remaining = _primitive(quo)
            modular = [m for i, m in enumerate(modular) if i not in combo]
            hit = True
            break
        if not hit:
            s += 1
    found.append(remaining)
    return found


def _factor_qq(f: Poly, degree_bound: int, seed: int) -> list[tuple[Poly, int]]:
    if f.degree > degree_bound:
        raise DegreeBoundError(
            f"degree {f.degree} exceeds the rational factorization bound {degree_bound}")
    out = []
    for g, e in squarefree_decomposition(f):
        for ints in _factor_squarefree_zz(_to_primitive_ints(g), seed):
            out.append((Poly(QQ, tuple(ints)).monic(), e))
    return out


def factor(f: Poly, degree_bound: int = DEFAULT_QDEG, seed: int = 0) -> list[tuple[Poly, int]]:
    """Complete factorization of ``f`` into monic irreducibles with exponents.

    The leading coefficient is discarded.  Output is sorted by (degree,
    coefficients) and independent of ``seed``.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree <= 0:
        return []
    if f.field.p == 0:
        facs = _factor_qq(f, degree_bound, seed)
    else:
        facs = _factor_fp(f, seed)
    merged: dict[Poly, int] = {}
    for g, e in facs:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda t: t[0].sort_key())


def is_irreducible(f: Poly, degree_bound: int = DEFAULT_QDEG) -> bool:
    if f.degree < 1:
        return False
    facs = factor(f, degree_bound)
    return len(facs) == 1 and facs[0][1] == 1


# ---------------------------------------------------------------------------
# text syntax


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


def parse_poly(text: str, field: Field | None = None) -> Poly:
    """Parse ``"x^2 - 3/2*x + 1"`` or ``"x^2+4x+3 mod 5"``.

    A ``mod p`` suffix selects F_p; otherwise ``field`` (default Q) is used.
    Implicit multiplication (``4x``, ``2(x+1)``) is accepted.
    """
    m = re.fullmatch(r"(.*?)\s*mod\s*(\d+)\s*", text)
    if m:
        text = m.group(1)
        suffix_field = Field.fp(int(m.group(2)))
        if field is not None and field != suffix_field:
            raise PolyParseError(f"'mod {suffix_field.p}' conflicts with field {field}")
        field = suffix_field
    field = field or QQ
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        tm = _TOKEN.match(stripped, pos)
        if not tm:
            raise PolyParseError(f"unexpected character at position {pos}: {stripped[pos:]!r}")
        tokens.append((tm.group(1) or tm.group(2) or tm.group(3), tm.start()))
        pos = tm.end()
    if not tokens:
        raise PolyParseError("empty polynomial")
    return _Parser(tokens, field).run()


class _Parser:
    def __init__(self, tokens, field):
        self.toks = tokens
        self.i = 0
        self.F = field

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok[0]

    def fail(self, msg):
        pos = self.toks[self.i][1] if self.i < len(self.toks) else "end"
        raise PolyParseError(f"{msg} at position {pos}")

    def run(self) -> Poly:
        out = self.expr()
        if self.i != len(self.toks):
            self.fail("trailing input")
        return out

    def expr(self) -> Poly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = acc * self.power()
            elif tok == "/":
                self.take()
                d = self.power()
                if d.degree != 0:
                    self.fail("division only by nonzero constants")
                acc = acc * Poly.const(self.F, self.F.inv(d.coeffs[0]))
            elif tok is not None and (tok.isdigit() or tok in ("x", "(")):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            tok = self.peek()
            if tok is None or not tok.isdigit():
                self.fail("expected integer exponent")
            base = base ** int(self.take())
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        if tok.isdigit():
            self.take()
            return Poly.const(self.F, int(tok))
        if tok == "x":
            self.take()
            return Poly.x(self.F)
        if tok == "(":
            self.take()
            inner = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if tok == "-":
            self.take()
            return -self.atom()
        self.fail(f"unexpected token {tok!r}")
