"""Exact arithmetic in the four supported coefficient rings.

Supported rings: the integers, integers mod m, multivariate polynomials
with exact rational coefficients, and the same polynomials truncated above
a total degree.  Every element is kept in a canonical form so structural
equality coincides with mathematical equality:

* integers mod m are stored as the least nonnegative residue;
* polynomials are stored as a tuple of (exponent-vector, coefficient)
  pairs, zero-free, with coefficients as `fractions.Fraction` in lowest
  terms, sorted graded-lexicographically (higher-index variables are more
  significant, so ``t3 - t1`` prints in that order);
* truncated polynomials additionally drop every monomial of total degree
  exceeding the cap.

Principal ideals come with exact membership (division), and gcd/lcm-based
sum and intersection over the PID kinds (integers, integers mod m via the
ideals of Z containing m, univariate polynomials).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .permutations import Permutation


class RingError(Exception):
    """Base class for ring-level failures."""


class RingMismatchError(RingError):
    pass


class UnsupportedRingError(RingError):
    pass


class ElementParseError(RingError):
    pass


INTEGERS = "integers"
INTEGERS_MOD = "integers-mod-m"
POLYNOMIAL = "polynomial"
TRUNCATED = "truncated-polynomial"

_KINDS = (INTEGERS, INTEGERS_MOD, POLYNOMIAL, TRUNCATED)

# terms are ((e1, ..., ek), Fraction) pairs, sorted descending by _mono_key
_Terms = tuple[tuple[tuple[int, ...], Fraction], ...]


def _mono_key(expts: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    # graded order; ties broken so that higher-index variables lead
    return (sum(expts), tuple(reversed(expts)))


@dataclass(frozen=True)
class RingDescriptor:
    """Which ring we are working in, plus its parameters."""

    kind: str
    modulus: Optional[int] = None
    variables: tuple[str, ...] = ()
    max_degree: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == INTEGERS_MOD:
            if self.modulus is None or self.modulus < 2:
                raise RingError("integers-mod-m needs a modulus >= 2")
        elif self.modulus is not None:
            raise RingError(f"{self.kind} takes no modulus")
        if self.kind in (POLYNOMIAL, TRUNCATED):
            if not self.variables:
                raise RingError(f"{self.kind} needs at least one variable")
            if len(set(self.variables)) != len(self.variables):
                raise RingError("variable names must be distinct")
            if any(not v or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v) for v in self.variables):
                raise RingError("variable names must be nonempty identifiers")
        elif self.variables:
            raise RingError(f"{self.kind} takes no variables")
        if self.kind == TRUNCATED:
            if self.max_degree is None or self.max_degree < 0:
                raise RingError("truncated-polynomial needs max_degree >= 0")
        elif self.max_degree is not None:
            raise RingError(f"{self.kind} takes no max_degree")

    # -- classification -------------------------------------------------

    @property
    def is_polynomial_kind(self) -> bool:
        return self.kind in (POLYNOMIAL, TRUNCATED)

    @property
    def is_pid(self) -> bool:
        """PID among the supported kinds: Z, Z/m (by convention), Q[t]."""
        if self.kind in (INTEGERS, INTEGERS_MOD):
            return True
        return self.kind == POLYNOMIAL and len(self.variables) == 1

    @property
    def has_zero_divisors(self) -> bool:
        return self.kind in (INTEGERS_MOD, TRUNCATED)

    # -- element constructors -------------------------------------------

    def zero(self) -> "RingElement":
        return self.from_int(0)

    def one(self) -> "RingElement":
        return self.from_int(1)

    def from_int(self, n: int) -> "RingElement":
        if self.kind == INTEGERS:
            return RingElement(self, n)
        if self.kind == INTEGERS_MOD:
            return RingElement(self, n % self.modulus)
        if n == 0:
            return RingElement(self, ())
        return RingElement(self, (((0,) * len(self.variables), Fraction(n)),))

    def from_fraction(self, q: Fraction) -> "RingElement":
        if not self.is_polynomial_kind:
            if q.denominator != 1:
                raise RingError(f"{self.kind} has no element {q}")
            return self.from_int(q.numerator)
        if q == 0:
            return RingElement(self, ())
        return RingElement(self, (((0,) * len(self.variables), q),))

    def variable(self, name: str) -> "RingElement":
        if not self.is_polynomial_kind:
            raise UnsupportedRingError(f"{self.kind} has no variables")
        if name not in self.variables:
            raise RingError(f"unknown variable {name!r}")
        expts = tuple(1 if v == name else 0 for v in self.variables)
        if self.kind == TRUNCATED and self.max_degree < 1:
            return RingElement(self, ())
        return RingElement(self, ((expts, Fraction(1)),))

    def parse(self, text: str) -> "RingElement":
        return parse_element(self, text)

    def __str__(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == INTEGERS_MOD:
            return f"Z/{self.modulus}"
        base = "Q[" + ",".join(self.variables) + "]"
        if self.kind == TRUNCATED:
            return f"{base}/(degree > {self.max_degree})"
        return base


def integers() -> RingDescriptor:
    return RingDescriptor(INTEGERS)


def integers_mod(m: int) -> RingDescriptor:
    return RingDescriptor(INTEGERS_MOD, modulus=m)


def polynomial_ring(*variables: str) -> RingDescriptor:
    return RingDescriptor(POLYNOMIAL, variables=tuple(variables))


def truncated_polynomial_ring(variables: Sequence[str], max_degree: int) -> RingDescriptor:
    return RingDescriptor(TRUNCATED, variables=tuple(variables), max_degree=max_degree)


def standard_variables(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


# ----------------------------------------------------------------------
# raw polynomial helpers (term dictionaries -> canonical term tuples)
# ----------------------------------------------------------------------

def _canon(terms: dict[tuple[int, ...], Fraction], cap: Optional[int]) -> _Terms:
    items = []
    for expts, coeff in terms.items():
        if coeff == 0:
            continue
        if cap is not None and sum(expts) > cap:
            continue
        items.append((expts, coeff))
    items.sort(key=lambda t: _mono_key(t[0]), reverse=True)
    return tuple(items)


def _padd(a: _Terms, b: _Terms, cap: Optional[int]) -> _Terms:
    acc = dict(a)
    for expts, coeff in b:
        acc[expts] = acc.get(expts, Fraction(0)) + coeff
    return _canon(acc, cap)


def _pneg(a: _Terms) -> _Terms:
    return tuple((expts, -coeff) for expts, coeff in a)


def _pmul(a: _Terms, b: _Terms, cap: Optional[int]) -> _Terms:
    acc: dict[tuple[int, ...], Fraction] = {}
    for ea, ca in a:
        for eb, cb in b:
            expts = tuple(x + y for x, y in zip(ea, eb))
            if cap is not None and sum(expts) > cap:
                continue
            acc[expts] = acc.get(expts, Fraction(0)) + ca * cb
    return _canon(acc, cap)


def _pscale(a: _Terms, c: Fraction) -> _Terms:
    if c == 0:
        return ()
    return tuple((expts, coeff * c) for expts, coeff in a)


def _pdivmod_multi(a: _Terms, b: _Terms) -> Optional[_Terms]:
    """Exact quotient a / b in the full polynomial ring, or None.

    Single-divisor division never needs a Groebner basis: when a is a
    multiple of b the leading term of every partial remainder stays
    divisible by the leading term of b, so failing early is sound.
    """
    if not b:
        return None if a else ()
    lead_e, lead_c = b[0]
    rem = {expts: coeff for expts, coeff in a}
    quo: dict[tuple[int, ...], Fraction] = {}
    while rem:
        expts = max(rem, key=_mono_key)
        coeff = rem[expts]
        q_expts = tuple(x - y for x, y in zip(expts, lead_e))
        if any(e < 0 for e in q_expts):
            return None
        q_coeff = coeff / lead_c
        quo[q_expts] = quo.get(q_expts, Fraction(0)) + q_coeff
        for eb, cb in b:
            key = tuple(x + y for x, y in zip(q_expts, eb))
            val = rem.get(key, Fraction(0)) - q_coeff * cb
            if val == 0:
                rem.pop(key, None)
            else:
                rem[key] = val
    return _canon(quo, None)


def _pdivmod_uni(a: _Terms, b: _Terms) -> tuple[_Terms, _Terms]:
    """Euclidean division for univariate terms: a = q*b + r, deg r < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_e, lead_c = b[0]
    db = lead_e[0]
    rem = {expts: coeff for expts, coeff in a}
    quo: dict[tuple[int, ...], Fraction] = {}
    while rem:
        expts = max(rem, key=_mono_key)
        if expts[0] < db:
            break
        coeff = rem[expts]
        q_expts = (expts[0] - db,)
        q_coeff = coeff / lead_c
        quo[q_expts] = quo.get(q_expts, Fraction(0)) + q_coeff
        for eb, cb in b:
            key = (q_expts[0] + eb[0],)
            val = rem.get(key, Fraction(0)) - q_coeff * cb
            if val == 0:
                rem.pop(key, None)
            else:
                rem[key] = val
    return _canon(quo, None), _canon(rem, None)


def _pmonic(a: _Terms) -> _Terms:
    if not a:
        return a
    return _pscale(a, 1 / a[0][1])


def _pgcd_uni(a: _Terms, b: _Terms) -> _Terms:
    while b:
        _, r = _pdivmod_uni(a, b)
        a, b = b, r
    return _pmonic(a)


def _pxgcd_uni(a: _Terms, b: _Terms) -> tuple[_Terms, _Terms, _Terms]:
    """(g, u, v) with u*a + v*b == g, g monic (or zero)."""
    one: _Terms = (((0,), Fraction(1)),)
    r0, r1 = a, b
    s0, s1 = one, ()
    t0, t1 = (), one
    while r1:
        q, r = _pdivmod_uni(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pneg(_pmul(q, s1, None)), None)
        t0, t1 = t1, _padd(t0, _pneg(_pmul(q, t1, None)), None)
    if r0:
        c = r0[0][1]
        r0, s0, t0 = _pscale(r0, 1 / c), _pscale(s0, 1 / c), _pscale(t0, 1 / c)
    return r0, s0, t0


# ----------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RingElement:
    """An exact element of one of the supported rings.

    Immutable; equality is structural and coincides with equality in the
    ring because the stored value is canonical.
    """

    ring: RingDescriptor
    value: object  # int for integer kinds, _Terms for polynomial kinds

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.value == 0 if not self.ring.is_polynomial_kind else not self.value

    def is_one(self) -> bool:
        return self == self.ring.one()

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial, 0 for nonzero scalars."""
        if not self.ring.is_polynomial_kind:
            return -1 if self.value == 0 else 0
        if not self.value:
            return -1
        return sum(self.value[0][0])

    def is_homogeneous(self) -> bool:
        if not self.ring.is_polynomial_kind:
            return True
        degrees = {sum(e) for e, _ in self.value}
        return len(degrees) <= 1

    def leading_coefficient(self) -> Fraction:
        if not self.ring.is_polynomial_kind:
            return Fraction(self.value)
        if not self.value:
            return Fraction(0)
        return self.value[0][1]

    def constant_value(self) -> Fraction:
        """The value as a scalar; error if a variable actually occurs."""
        if not self.ring.is_polynomial_kind:
            return Fraction(self.value)
        if not self.value:
            return Fraction(0)
        if self.degree() > 0:
            raise RingError(f"{self} is not constant")
        return self.value[0][1]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "RingElement") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"elements of {self.ring} and {other.ring} cannot mix")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        ring = self.ring
        if ring.kind == INTEGERS:
            return RingElement(ring, self.value + other.value)
        if ring.kind == INTEGERS_MOD:
            return RingElement(ring, (self.value + other.value) % ring.modulus)
        return RingElement(ring, _padd(self.value, other.value, ring.max_degree))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __neg__(self) -> "RingElement":
        ring = self.ring
        if ring.kind == INTEGERS:
            return RingElement(ring, -self.value)
        if ring.kind == INTEGERS_MOD:
            return RingElement(ring, (-self.value) % ring.modulus)
        return RingElement(ring, _pneg(self.value))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        ring = self.ring
        if ring.kind == INTEGERS:
            return RingElement(ring, self.value * other.value)
        if ring.kind == INTEGERS_MOD:
            return RingElement(ring, (self.value * other.value) % ring.modulus)
        return RingElement(ring, _pmul(self.value, other.value, ring.max_degree))

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            raise RingError("negative powers are not ring elements")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<{self.ring}: {format_element(self)}>"


def elem_arith(a: RingElement, b: Optional[RingElement], op: str) -> RingElement:
    """Spec surface for {add, sub, mul, neg} on ring elements."""
    if op == "neg":
        return -a
    if b is None:
        raise RingError(f"binary op {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise RingError(f"unknown op {op!r}")


# ----------------------------------------------------------------------
# exact division and membership
# ----------------------------------------------------------------------

def exact_divide(x: RingElement, g: RingElement) -> Optional[RingElement]:
    """A quotient q with x == q*g in the ring, or None if none exists."""
    if x.ring != g.ring:
        raise RingMismatchError("exact_divide across different rings")
    ring = x.ring
    if g.is_zero():
        return ring.zero() if x.is_zero() else None
    if ring.kind == INTEGERS:
        q, r = divmod(x.value, g.value)
        return RingElement(ring, q) if r == 0 else None
    if ring.kind == INTEGERS_MOD:
        m = ring.modulus
        d = math.gcd(g.value, m)
        if x.value % d != 0:
            return None
        mm = m // d
        q = (x.value // d) * pow(g.value // d, -1, mm) % mm if mm > 1 else 0
        return RingElement(ring, q % m)
    if ring.kind == POLYNOMIAL:
        quo = _pdivmod_multi(x.value, g.value)
        return RingElement(ring, quo) if quo is not None else None
    return _truncated_divide(x, g)


def _monomials_up_to(nvars: int, cap: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, budget: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for e in range(budget + 1):
            rec(prefix + (e,), remaining - 1, budget - e)

    rec((), nvars, cap)
    out.sort(key=_mono_key, reverse=True)
    return out


def _truncated_divide(x: RingElement, g: RingElement) -> Optional[RingElement]:
    """Solve q*g == x inside the truncated ring by linear algebra.

    Truncation creates extra units (1 + t is invertible when powers of t
    die), so plain polynomial division would be incomplete here.
    """
    ring = x.ring
    cap = ring.max_degree
    monos = _monomials_up_to(len(ring.variables), cap)
    # echelon basis of the ideal generated by g, tracking the multiplier
    basis: list[tuple[tuple[int, ...], dict, _Terms]] = []  # (pivot, rowdict, multiplier)

    def reduce_against(row: dict, mult: _Terms) -> tuple[dict, _Terms]:
        for pivot, brow, bmult in basis:
            coeff = row.get(pivot)
            if coeff:
                factor = coeff / brow[pivot]
                for k, v in brow.items():
                    nv = row.get(k, Fraction(0)) - factor * v
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
                mult = _padd(mult, _pneg(_pscale(bmult, factor)), cap)
        return row, mult

    for mono in monos:
        prod = _pmul((((mono), Fraction(1)),), g.value, cap)
        row = {e: c for e, c in prod}
        row, mult = reduce_against(row, (((mono), Fraction(1)),))
        if row:
            pivot = max(row, key=_mono_key)
            basis.append((pivot, row, mult))
            basis.sort(key=lambda t: _mono_key(t[0]), reverse=True)

    row = {e: c for e, c in x.value}
    row, mult = reduce_against(row, ())
    if row:
        return None
    return RingElement(ring, _pneg(mult))


# ----------------------------------------------------------------------
# gcd / lcm on the PID kinds
# ----------------------------------------------------------------------

def _require_pid(ring: RingDescriptor, what: str) -> None:
    if not ring.is_pid:
        raise UnsupportedRingError(f"{what} needs a PID ring, not {ring}")


def ring_gcd(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    ring = a.ring
    _require_pid(ring, "gcd")
    if ring.kind == INTEGERS:
        return RingElement(ring, math.gcd(a.value, b.value))
    if ring.kind == INTEGERS_MOD:
        return RingElement(ring, math.gcd(a.value, b.value, ring.modulus) % ring.modulus)
    return RingElement(ring, _pgcd_uni(a.value, b.value))


def ring_lcm(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    ring = a.ring
    _require_pid(ring, "lcm")
    if ring.kind == INTEGERS:
        return RingElement(ring, math.lcm(a.value, b.value))
    if ring.kind == INTEGERS_MOD:
        ga, gb = math.gcd(a.value, ring.modulus), math.gcd(b.value, ring.modulus)
        return RingElement(ring, math.lcm(ga, gb) % ring.modulus)
    if a.is_zero() or b.is_zero():
        return ring.zero()
    g = _pgcd_uni(a.value, b.value)
    quo = _pdivmod_multi(a.value, g)
    return RingElement(ring, _pmonic(_pmul(quo, b.value, None)))


# ----------------------------------------------------------------------
# principal ideals
# ----------------------------------------------------------------------

def _unit_normalize(g: RingElement) -> RingElement:
    ring = g.ring
    if ring.kind == INTEGERS:
        return RingElement(ring, abs(g.value))
    if ring.kind == INTEGERS_MOD:
        return RingElement(ring, math.gcd(g.value, ring.modulus) % ring.modulus)
    if g.is_zero():
        return g
    return RingElement(ring, _pmonic(g.value))


@dataclass(frozen=True)
class PrincipalIdeal:
    """The ideal generated by one element, stored with a normalized generator."""

    generator: RingElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "generator", _unit_normalize(self.generator))

    @property
    def ring(self) -> RingDescriptor:
        return self.generator.ring

    def is_zero(self) -> bool:
        return self.generator.is_zero()

    def contains(self, x: RingElement) -> bool:
        return ideal_member(x, self)

    def __str__(self) -> str:
        return f"<{self.generator}>"


def ideal_member(x: RingElement, ideal: PrincipalIdeal) -> bool:
    """x lies in the ideal iff an exact quotient by the generator exists."""
    if x.ring != ideal.ring:
        raise RingMismatchError("membership across different rings")
    if ideal.generator.is_zero():
        return x.is_zero()
    return exact_divide(x, ideal.generator) is not None


def ideal_sum(i: PrincipalIdeal, j: PrincipalIdeal) -> PrincipalIdeal:
    """<a> + <b> = <gcd(a, b)> over the PID kinds."""
    return PrincipalIdeal(ring_gcd(i.generator, j.generator))


def ideal_intersect(i: PrincipalIdeal, j: PrincipalIdeal) -> PrincipalIdeal:
    """<a> ∩ <b> = <lcm(a, b)> over the PID kinds."""
    return PrincipalIdeal(ring_lcm(i.generator, j.generator))


# ----------------------------------------------------------------------
# variable actions and substitution
# ----------------------------------------------------------------------

def poly_permute(w: Permutation, p: RingElement) -> RingElement:
    """Permute variables by sending the i-th variable to the w(i)-th one."""
    ring = p.ring
    if not ring.is_polynomial_kind:
        raise UnsupportedRingError("variable permutation needs a polynomial ring")
    nvars = len(ring.variables)
    if w.n > nvars:
        raise RingError(f"permutation of S_{w.n} cannot act on {nvars} variables")
    acc: dict[tuple[int, ...], Fraction] = {}
    for expts, coeff in p.value:
        moved = list(expts)
        for i in range(w.n):
            moved[w(i + 1) - 1] = expts[i]
        key = tuple(moved)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return RingElement(ring, _canon(acc, ring.max_degree))


def substitute(p: RingElement, target: RingDescriptor, images: Sequence[RingElement]) -> RingElement:
    """Apply the ring map sending each source variable to the given image."""
    ring = p.ring
    if not ring.is_polynomial_kind:
        raise UnsupportedRingError("substitution needs a polynomial ring")
    if len(images) != len(ring.variables):
        raise RingError("one image per source variable required")
    for img in images:
        if img.ring != target:
            raise RingMismatchError("images must live in the target ring")
    result = target.zero()
    for expts, coeff in p.value:
        term = target.from_fraction(coeff)
        for e, img in zip(expts, images):
            for _ in range(e):
                term = term * img
        result = result + term
    return result


# ----------------------------------------------------------------------
# congruences (CRT merge over Z and over Q[t])
# ----------------------------------------------------------------------

def merge_int_congruence(r1: int, m1: int, r2: int, m2: int) -> Optional[tuple[int, int]]:
    """Combine x ≡ r1 (mod m1) and x ≡ r2 (mod m2); modulus 0 means equality.

    Returns (r, m) with the residue least nonnegative (for m > 0), or None
    when the congruences conflict.
    """
    g = math.gcd(m1, m2)
    if g == 0:  # both exact
        return (r1, 0) if r1 == r2 else None
    if (r1 - r2) % g != 0:
        return None
    if m1 == 0:
        return (r1, 0)
    if m2 == 0:
        return (r2, 0)
    l = math.lcm(m1, m2)
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
    return ((r1 + m1 * t) % l, l)


def merge_poly_congruence(
    r1: RingElement, m1: RingElement, r2: RingElement, m2: RingElement
) -> Optional[tuple[RingElement, RingElement]]:
    """CRT merge over a univariate polynomial ring; zero modulus means equality."""
    ring = r1.ring
    _require_pid(ring, "polynomial congruence")
    if ring.kind != POLYNOMIAL:
        raise UnsupportedRingError("polynomial congruence merge needs Q[t]")
    if m1.is_zero() and m2.is_zero():
        return (r1, m1) if r1 == r2 else None
    if m1.is_zero():
        return ((r1, m1) if ideal_member(r1 - r2, PrincipalIdeal(m2)) else None)
    if m2.is_zero():
        return ((r2, m2) if ideal_member(r1 - r2, PrincipalIdeal(m1)) else None)
    g, u, _ = _pxgcd_uni(m1.value, m2.value)
    diff = (r2 - r1).value
    quo = _pdivmod_multi(diff, g) if g else (None if diff else ())
    if quo is None:
        return None
    # x = r1 + m1 * u * (r2 - r1)/g  solves both congruences
    lift = _pmul(m1.value, _pmul(u, quo, None), None)
    l = ring_lcm(m1, m2)
    x = RingElement(ring, _padd(r1.value, lift, None))
    _, rem = _pdivmod_uni(x.value, l.value)
    return (RingElement(ring, rem), l)


# ----------------------------------------------------------------------
# parsing and printing
# ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ElementParseError(f"unexpected character {text[pos]!r} at position {pos}")
            break
        pos = m.end()
        if m.group(1):
            tokens.append(("num", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
    return tokens


def parse_element(ring: RingDescriptor, text: str) -> RingElement:
    """Parse the textual element syntax, e.g. ``3/2*t1^2*t3 - t2 + 4``.

    Integers are decimal strings of arbitrary size; polynomial terms are
    products of a rational coefficient and powers of declared variables.
    """
    text = text.strip()
    if not text:
        raise ElementParseError("empty element string")
    if not ring.is_polynomial_kind:
        if not re.fullmatch(r"[-+]?\d+", text):
            raise ElementParseError(f"{text!r} is not an integer literal")
        return ring.from_int(int(text))

    tokens = _tokenize(text)
    pos = 0

    def peek() -> Optional[tuple[str, str]]:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> tuple[str, str]:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ElementParseError(f"unexpected end of input in {text!r}")
        pos += 1
        return tok

    def parse_atom() -> RingElement:
        kind, val = take()
        if kind == "num":
            num = int(val)
            if peek() == ("op", "/"):
                take()
                dk, dv = take()
                if dk != "num":
                    raise ElementParseError(f"expected denominator after '/' in {text!r}")
                return ring.from_fraction(Fraction(num, int(dv)))
            return ring.from_int(num)
        if kind == "name":
            if val not in ring.variables:
                raise ElementParseError(f"unknown variable {val!r} (declared: {', '.join(ring.variables)})")
            base = ring.variable(val)
            if peek() == ("op", "^"):
                take()
                ek, ev = take()
                if ek != "num":
                    raise ElementParseError(f"expected exponent after '^' in {text!r}")
                return base ** int(ev)
            return base
        raise ElementParseError(f"unexpected token {val!r} in {text!r}")

    def parse_term() -> RingElement:
        result = parse_atom()
        while peek() == ("op", "*"):
            take()
            result = result * parse_atom()
        return result

    sign = 1
    tok = peek()
    if tok == ("op", "-"):
        take()
        sign = -1
    elif tok == ("op", "+"):
        take()
    result = parse_term()
    if sign < 0:
        result = -result
    while peek() is not None:
        kind, val = take()
        if kind != "op" or val not in "+-":
            raise ElementParseError(f"expected '+' or '-' before {val!r} in {text!r}")
        term = parse_term()
        result = result + term if val == "+" else result - term
    return result


def format_element(e: RingElement) -> str:
    if not e.ring.is_polynomial_kind:
        return str(e.value)
    if not e.value:
        return "0"
    parts: list[str] = []
    for idx, (expts, coeff) in enumerate(e.value):
        factors = []
        for var, exp in zip(e.ring.variables, expts):
            if exp == 1:
                factors.append(var)
            elif exp > 1:
                factors.append(f"{var}^{exp}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if idx == 0:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append((" + " if coeff > 0 else " - ") + body)
    return "".join(parts)
