"""Exact rational and cyclotomic field arithmetic.

Every value in this package ultimately lives in some cyclotomic field
Q(zeta_N).  Elements are stored as coefficient vectors over the power basis
1, z, ..., z^(phi(N)-1) of Q[z]/(Phi_N(z)), with Phi_N the N-th cyclotomic
polynomial.  Working modulo Phi_N (rather than z^N - 1) keeps the quotient a
field, so every nonzero element is invertible.

Normalisation levels:

* after every operation the vector is reduced mod Phi_N and collapsed to
  conductor 1 whenever the value is rational (the reduced representation of
  a rational number is always (q, 0, ..., 0), so this check is O(phi(N)));
* ``canonical()`` additionally minimises the conductor over all divisors,
  which is what serialisation and hashing use.

Equality embeds both operands into the lcm conductor and compares vectors,
so it is exact and independent of how a value happens to be represented.
"""

from __future__ import annotations

import math
import re
from functools import cache

try:  # gmpy2's mpq is a drop-in, much faster exact rational
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

_ZERO_Q = Rational(0)
_ONE_Q = Rational(1)


class NotRational(ValueError):
    """Raised when a genuinely irrational cyclotomic value is coerced to Q."""


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    return math.lcm(a, b)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@cache
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@cache
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _int_poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # long division in Z[x]; den is monic, division must be exact
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@cache
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree; computed by exact division
    of x^n - 1 by all Phi_e with e | n, e < n."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial requires n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for e in divisors(n):
        if e < n:
            poly = _int_poly_div_exact(poly, cyclotomic_polynomial(e))
    return tuple(poly)


@cache
def _power_basis(n: int, k: int) -> tuple[int, ...]:
    # z^k reduced mod Phi_n, as an integer vector of length phi(n)
    deg = euler_phi(n)
    if k < deg:
        vec = [0] * deg
        vec[k] = 1
        return tuple(vec)
    phi = cyclotomic_polynomial(n)
    # z^deg = -(phi[0] + phi[1] z + ... + phi[deg-1] z^(deg-1))
    prev = _power_basis(n, k - 1)
    shifted = [0] + list(prev[: deg - 1])
    lead = prev[deg - 1]
    if lead:
        for i in range(deg):
            shifted[i] -= lead * phi[i]
    return tuple(shifted)


def _reduce_mod_phi(n: int, coeffs: list) -> tuple:
    deg = euler_phi(n)
    out = list(coeffs[:deg]) + [_ZERO_Q] * max(0, deg - len(coeffs))
    for k in range(deg, len(coeffs)):
        c = coeffs[k]
        if c:
            row = _power_basis(n, k)
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class Cyclotomic:
    """An exact element of the N-th cyclotomic field.

    Immutable; all operations return new values.  Mixed-conductor operands
    are embedded into the lcm conductor first.  Rational values always
    collapse to conductor 1.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs, *, _normalized: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be >= 1")
        if _normalized:
            self.conductor = conductor
            self.coeffs = coeffs
            return
        vec = _reduce_mod_phi(conductor, [Rational(c) for c in coeffs])
        if conductor > 1 and not any(vec[1:]):
            self.conductor = 1
            self.coeffs = (vec[0],)
        else:
            self.conductor = conductor
            self.coeffs = vec

    @classmethod
    def from_rational(cls, q) -> "Cyclotomic":
        return cls(1, (Rational(q),), _normalized=True)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Cyclotomic | None":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, int) or type(value) is type(_ONE_Q):
            return Cyclotomic.from_rational(value)
        try:
            return Cyclotomic.from_rational(Rational(value))
        except (TypeError, ValueError):
            return None

    def embed(self, m: int) -> "Cyclotomic":
        """Rewrite this value in Q(zeta_m); m must be a multiple of the
        current conductor."""
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot embed conductor {n} into {m}")
        step = m // n
        deg_m = euler_phi(m)
        out = [_ZERO_Q] * deg_m
        for i, c in enumerate(self.coeffs):
            if c:
                row = _power_basis(m, i * step)
                for j in range(deg_m):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(m, tuple(out), _normalized=True)

    # -- arithmetic -------------------------------------------------------

    def _binary(self, other, op):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        n = lcm(self.conductor, other.conductor)
        return op(self.embed(n), other.embed(n), n)

    @staticmethod
    def _post(n: int, vec: tuple) -> "Cyclotomic":
        if n > 1 and not any(vec[1:]):
            return Cyclotomic(1, (vec[0],), _normalized=True)
        return Cyclotomic(n, vec, _normalized=True)

    def __add__(self, other):
        def add(a, b, n):
            return Cyclotomic._post(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))
        return self._binary(other, add)

    __radd__ = __add__

    def __sub__(self, other):
        def sub(a, b, n):
            return Cyclotomic._post(n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))
        return self._binary(other, sub)

    def __rsub__(self, other):
        other = Cyclotomic._coerce(other)
        return NotImplemented if other is None else other - self

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs), _normalized=True)

    def __mul__(self, other):
        # fast paths: rational scalars never change the conductor
        if isinstance(other, int) or type(other) is type(_ONE_Q):
            if not other:
                return ZERO
            return Cyclotomic(self.conductor, tuple(c * other for c in self.coeffs),
                              _normalized=True)
        def mul(a, b, n):
            ca, cb = a.coeffs, b.coeffs
            conv = [_ZERO_Q] * (len(ca) + len(cb) - 1)
            for i, x in enumerate(ca):
                if x:
                    for j, y in enumerate(cb):
                        if y:
                            conv[i + j] += x * y
            return Cyclotomic._post(n, _reduce_mod_phi(n, conv))
        return self._binary(other, mul)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("cannot invert 0")
        if self.conductor == 1:
            return Cyclotomic.from_rational(_ONE_Q / self.coeffs[0])
        phi = [Rational(c) for c in cyclotomic_polynomial(self.conductor)]
        g, u, _ = _poly_xgcd(list(self.coeffs), phi)
        # gcd is a nonzero constant since Phi_N is irreducible
        inv_c = _ONE_Q / g[0]
        vec = _reduce_mod_phi(self.conductor, [c * inv_c for c in u])
        return Cyclotomic._post(self.conductor, vec)

    def __truediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, j: int) -> "Cyclotomic":
        """Apply the automorphism zeta_N -> zeta_N^j (j coprime to N)."""
        n = self.conductor
        if gcd(j, n) != 1:
            raise ValueError(f"{j} is not coprime to the conductor {n}")
        out = [_ZERO_Q] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                row = _power_basis(n, (i * j) % n)
                for t in range(len(out)):
                    if row[t]:
                        out[t] += c * row[t]
        return Cyclotomic._post(n, tuple(out))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.conductor) if self.conductor > 1 else self

    # -- predicates and conversions ---------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 1

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_rational(self):
        if self.conductor != 1:
            raise NotRational(f"{self} does not lie in Q")
        return self.coeffs[0]

    def canonical(self) -> "Cyclotomic":
        """Minimise the conductor (the stored form is already canonical at
        its own conductor; this finds the smallest cyclotomic subfield)."""
        n = self.conductor
        if n == 1:
            return self
        for d in divisors(n):
            if d == 1 or d == n or d % 4 == 2:
                continue
            sol = _express_in_subfield(self.coeffs, n, d)
            if sol is not None:
                return Cyclotomic(d, sol, _normalized=True)
        return self

    def __eq__(self, other) -> bool:
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        n = lcm(self.conductor, other.conductor)
        return self.embed(n).coeffs == other.embed(n).coeffs

    def __hash__(self):
        c = self.canonical()
        return hash((c.conductor, c.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        c = self.canonical()
        if c.conductor == 1:
            return str(c.coeffs[0])
        parts = []
        for i, q in enumerate(c.coeffs):
            if not q:
                continue
            if i == 0:
                parts.append(str(q))
                continue
            sym = f"zeta({c.conductor})" if i == 1 else f"zeta({c.conductor})^{i}"
            if q == 1:
                term = sym
            elif q == -1:
                term = f"-{sym}"
            else:
                term = f"{q}*{sym}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def to_json(self) -> dict:
        c = self.canonical()
        return {"conductor": c.conductor, "coeffs": [str(q) for q in c.coeffs]}


def _strip(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul_q(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [_ZERO_Q] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                if y:
                    out[i + j] += x * y
    return _strip(out)


def _poly_sub_q(p: list, q: list) -> list:
    out = list(p) + [_ZERO_Q] * max(0, len(q) - len(p))
    for i, y in enumerate(q):
        out[i] -= y
    return _strip(out)


def _poly_divmod_q(num: list, den: list) -> tuple[list, list]:
    rem = list(num)
    quot = [_ZERO_Q] * max(0, len(rem) - len(den) + 1)
    while len(rem) >= len(den):
        c = rem[-1] / den[-1]
        shift = len(rem) - len(den)
        quot[shift] = c
        for i, di in enumerate(den):
            if di:
                rem[i + shift] -= c * di
        rem.pop()
        _strip(rem)
    return _strip(quot), rem


def _poly_xgcd(a: list, b: list):
    """Extended Euclid in Q[z]: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = _strip(list(a)), _strip(list(b))
    u0, u1 = [_ONE_Q], []
    v0, v1 = [], [_ONE_Q]
    while r1:
        q, rem = _poly_divmod_q(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, _poly_sub_q(u0, _poly_mul_q(q, u1))
        v0, v1 = v1, _poly_sub_q(v0, _poly_mul_q(q, v1))
    return r0, u0, v0


@cache
def _subfield_embedding_matrix(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    # columns: images in Q(zeta_n) of the power basis of Q(zeta_d)
    step = n // d
    return tuple(_power_basis(n, j * step) for j in range(euler_phi(d)))


def _express_in_subfield(vec, n: int, d: int):
    """Solve for coordinates of vec over the embedded basis of Q(zeta_d),
    or return None when vec does not lie in that subfield."""
    cols = _subfield_embedding_matrix(n, d)
    rows, ncols = euler_phi(n), len(cols)
    aug = [[Rational(cols[j][i]) for j in range(ncols)] + [vec[i]]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = _ONE_Q / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    # consistency: rows without pivot must have zero rhs
    for i in range(r, rows):
        if aug[i][ncols]:
            return None
    sol = [_ZERO_Q] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    # non-pivot columns default to 0; verify (embedding has full rank anyway)
    return tuple(sol)


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


def root_of_unity(n: int, k: int) -> Cyclotomic:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("order must be >= 1")
    k %= n
    deg = euler_phi(n)
    vec = [_ZERO_Q] * deg
    if k < deg:
        vec[k] = _ONE_Q
        return Cyclotomic._post(n, tuple(vec))
    return Cyclotomic._post(n, tuple(Rational(c) for c in _power_basis(n, k)))


_ZETA_RE = re.compile(r"^zeta\((\d+)\)(?:\^(-?\d+))?$")


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse 'zeta(N)^k' or an integer/rational literal like '-3/4'."""
    s = text.strip()
    m = _ZETA_RE.match(s)
    if m:
        n = int(m.group(1))
        k = int(m.group(2)) if m.group(2) else 1
        return root_of_unity(n, k)
    try:
        return Cyclotomic.from_rational(Rational(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse cyclotomic literal {text!r}") from exc
