"""Exact coefficients for the Links-Gould state models.

Elements live in Z[Q, Q^-1, p, p^-1][s_0..s_3] localized at Delta = Q^2 - Q^-2,
where Q = q^(1/2), p = q^(alpha + (m-n)/2) and s_i is a formal square root of
the bracket numerator q^(alpha+i) - q^(-alpha-i).  Every element is stored as a
numerator over Delta^dpow.

Monomials are packed into single Python ints (see ``pack``) so that the hot
kernels in :mod:`linksgould._kernels` can multiply them by integer addition.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from . import backend as _kernels

__all__ = [
    "RingContext",
    "Monomial",
    "RingElem",
    "RingError",
    "ContextMismatch",
    "MalformedEntry",
    "UnsupportedInversion",
    "NotAPolynomial",
    "bracket",
    "to_int",
    "invert_vars",
    "to_li",
    "delta",
]

from ._layout import (KEY_BIAS, NROOTS, ONE_KEY, P_BIAS, P_MASK, Q_BIAS, Q_SHIFT,
                      SMASK_BITS, SMASK_MASK)


class RingError(ArithmeticError):
    pass


class ContextMismatch(RingError):
    pass


class MalformedEntry(RingError):
    pass


class UnsupportedInversion(RingError):
    pass


class NotAPolynomial(RingError):
    pass


def pack(eQ: int, ep: int, smask: int = 0) -> int:
    if not -P_BIAS < ep < P_BIAS:
        raise OverflowError(f"p exponent {ep} out of packing range")
    return ((eQ + Q_BIAS) << Q_SHIFT) | ((ep + P_BIAS) << SMASK_BITS) | smask


def unpack(key: int) -> tuple[int, int, int]:
    return ((key >> Q_SHIFT) - Q_BIAS,
            ((key >> SMASK_BITS) & P_MASK) - P_BIAS,
            key & SMASK_MASK)


class Monomial(NamedTuple):
    eQ: int
    ep: int
    smask: int = 0

    def key(self) -> int:
        return pack(self.eQ, self.ep, self.smask)


class RingContext:
    """Fixes m and n; ``shift2`` = m - n is twice the p-offset measured in q."""

    __slots__ = ("m", "n", "shift2", "sqtable", "_hash")

    _cache: dict = {}

    def __new__(cls, m: int, n: int = 1):
        key = (m, n)
        ctx = cls._cache.get(key)
        if ctx is not None:
            return ctx
        if m < 1 or n < 1:
            raise ValueError("m and n must be positive")
        ctx = object.__new__(cls)
        ctx.m = m
        ctx.n = n
        ctx.shift2 = m - n
        ctx.sqtable = _root_square_table(m - n)
        ctx._hash = hash(key)
        cls._cache[key] = ctx
        return ctx

    @property
    def shift(self) -> Fraction:
        return Fraction(self.shift2, 2)

    def __repr__(self):
        return f"RingContext(m={self.m}, n={self.n})"

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (RingContext, (self.m, self.n))


def _bracket_numerator(shift2: int, i: int) -> dict[int, int]:
    # q^(alpha+i) - q^(-alpha-i) = p Q^(2i - shift2) - p^-1 Q^(shift2 - 2i)
    return {pack(2 * i - shift2, 1): 1, pack(shift2 - 2 * i, -1): -1}


def _root_square_table(shift2: int) -> tuple:
    """For each mask of overlapping roots, the expansion of prod s_i^2.

    Entries are (key offset, coefficient); the offset is added to a product
    key whose smask bits have already been xor-ed.
    """
    table = []
    for mask in range(1 << NROOTS):
        terms = {0: 1}
        for i in range(NROOTS):
            if mask >> i & 1:
                nxt: dict[int, int] = {}
                for k, c in terms.items():
                    for k2, c2 in _bracket_numerator(shift2, i).items():
                        d = k + k2 - KEY_BIAS
                        nxt[d] = nxt.get(d, 0) + c * c2
                terms = {k: c for k, c in nxt.items() if c}
        table.append(tuple(terms.items()))
    return tuple(table)


DELTA_TERMS = {pack(2, 0): 1, pack(-2, 0): -1}


class RingElem:
    """Immutable element ``terms / Delta**dpow``.

    ``terms`` maps packed monomial keys to nonzero ints.  Construction always
    cancels common powers of Delta, so equal elements have equal fields.
    """

    __slots__ = ("ctx", "terms", "dpow", "_hash")

    def __init__(self, ctx: RingContext, terms=None, dpow: int = 0, *, _canonical=False):
        self.ctx = ctx
        if terms is None:
            terms = {}
        elif not _canonical:
            terms = {k: c for k, c in terms.items() if c}
        if dpow < 0:
            terms = _kernels.mul_poly(terms, _delta_power(-dpow), ctx.sqtable)
            dpow = 0
        if dpow and terms and not _canonical:
            terms, dpow = cancel_delta(terms, dpow)
        if not terms:
            dpow = 0
        self.terms = terms
        self.dpow = dpow
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, ctx: RingContext, c: int) -> "RingElem":
        return cls(ctx, {ONE_KEY: c} if c else {}, _canonical=True)

    @classmethod
    def monomial(cls, ctx: RingContext, eQ: int = 0, ep: int = 0, smask: int = 0,
                 c: int = 1) -> "RingElem":
        return cls(ctx, {pack(eQ, ep, smask): c} if c else {}, _canonical=True)

    @classmethod
    def root(cls, ctx: RingContext, i: int) -> "RingElem":
        if not 0 <= i < NROOTS:
            raise ValueError(f"no root symbol s_{i}")
        return cls.monomial(ctx, smask=1 << i)

    @classmethod
    def from_terms(cls, ctx: RingContext, items, dpow: int = 0) -> "RingElem":
        """Build from an iterable of ``(Monomial, coeff)`` pairs."""
        terms: dict[int, int] = {}
        for mono, c in items:
            k = Monomial(*mono).key()
            terms[k] = terms.get(k, 0) + c
        return cls(ctx, terms, dpow)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.dpow == 0 and self.terms == {ONE_KEY: 1}

    def monomials(self) -> list[tuple[Monomial, int]]:
        return sorted((Monomial(*unpack(k)), c) for k, c in self.terms.items())

    def smask_free(self) -> bool:
        return all(not (k & SMASK_MASK) for k in self.terms)

    def s_degree_parities(self) -> set[int]:
        return {bin(k & SMASK_MASK).count("1") % 2 for k in self.terms}

    def as_monomial(self) -> tuple[int, Monomial] | None:
        """(coeff, Monomial) if this is a single Delta-free term, else None."""
        if self.dpow or len(self.terms) != 1:
            return None
        (k, c), = self.terms.items()
        return c, Monomial(*unpack(k))

    # arithmetic
    def _check(self, other: "RingElem"):
        if other.ctx is not self.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def _coerce(self, other):
        if isinstance(other, RingElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return RingElem.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.dpow < b.dpow:
            a, b = b, a
        bt = b.terms
        if a.dpow != b.dpow:
            bt = _kernels.mul_poly(bt, _delta_power(a.dpow - b.dpow), self.ctx.sqtable)
        terms = dict(a.terms)
        _kernels.add_into(terms, bt)
        return RingElem(self.ctx, terms, a.dpow, _canonical=not a.dpow)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ctx, {k: -c for k, c in self.terms.items()}, self.dpow,
                        _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = _kernels.mul_poly(self.terms, other.terms, self.ctx.sqtable)
        dpow = self.dpow + other.dpow
        return RingElem(self.ctx, terms, dpow, _canonical=not dpow)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = RingElem.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElem.const(self.ctx, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        self._check(other)
        return self.dpow == other.dpow and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.dpow, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        s = format_terms(self.terms)
        if self.dpow:
            s = f"({s})/Delta^{self.dpow}" if self.dpow > 1 else f"({s})/Delta"
        return s


def format_terms(terms: dict[int, int]) -> str:
    if not terms:
        return "0"
    parts = []
    for k in sorted(terms):
        c = terms[k]
        eQ, ep, sm = unpack(k)
        factors = []
        if eQ:
            factors.append("Q" if eQ == 1 else f"Q^{eQ}")
        if ep:
            factors.append("p" if ep == 1 else f"p^{ep}")
        factors.extend(f"s{i}" for i in range(NROOTS) if sm >> i & 1)
        body = "*".join(factors)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


_DELTA_POWERS: list[dict[int, int]] = [{ONE_KEY: 1}]


def _delta_power(k: int) -> dict[int, int]:
    while len(_DELTA_POWERS) <= k:
        # Delta is smask-free, so any context's table works for the product
        _DELTA_POWERS.append(_kernels.mul_poly(_DELTA_POWERS[-1], DELTA_TERMS, _NO_ROOTS))
    return _DELTA_POWERS[k]


_NO_ROOTS = ((((0, 1),),) * (1 << NROOTS))


def divide_by_delta(terms: dict[int, int]) -> dict[int, int] | None:
    """Exact quotient ``terms / (Q^2 - Q^-2)``, or None if it does not divide.

    Synthetic division in Q on every fixed (p-exponent, smask) slice.
    """
    slices: dict[int, dict[int, int]] = {}
    for k, c in terms.items():
        low = k & ((1 << Q_SHIFT) - 1)
        slices.setdefault(low, {})[k >> Q_SHIFT] = c
    out: dict[int, int] = {}
    for low, poly in slices.items():
        rem = dict(poly)
        # leading term c Q^e contributes c Q^(e-2) to the quotient and adds c to Q^(e-4)
        exps = sorted(rem, reverse=True)
        lo = exps[-1]
        e = exps[0]
        while e >= lo + 4:
            c = rem.pop(e, 0)
            if c:
                out[((e - 2) << Q_SHIFT) | low] = c
                rem[e - 4] = rem.get(e - 4, 0) + c
            e -= 1
        if any(rem.values()):
            return None
    return out


def cancel_delta(terms: dict[int, int], dpow: int) -> tuple[dict[int, int], int]:
    while dpow:
        q = divide_by_delta(terms)
        if q is None:
            break
        terms = q
        dpow -= 1
    return terms, dpow


def delta(ctx: RingContext) -> RingElem:
    """Delta = q - q^-1 = Q^2 - Q^-2."""
    return RingElem(ctx, dict(DELTA_TERMS), _canonical=True)


def bracket(ctx: RingContext, i: int) -> RingElem:
    """[alpha + i]_q written in the internal variables."""
    return RingElem(ctx, _bracket_numerator(ctx.shift2, i), 1, _canonical=True)


def to_int(ctx: RingContext, x: int, y) -> Monomial:
    """q^(x alpha + y) as a monomial in Q and p; y may be a half-integer."""
    y = Fraction(y)
    e = 2 * y - x * ctx.shift2
    if e.denominator != 1:
        raise MalformedEntry(f"q^({x} alpha + {y}) has no integral Q exponent for m={ctx.m}")
    return Monomial(int(e), x, 0)


def to_rep(ctx: RingContext, mono: Monomial) -> tuple[int, Fraction]:
    """Inverse of :func:`to_int`: returns (x, y) with mono = q^(x alpha + y)."""
    if mono.smask:
        raise MalformedEntry("root symbols have no rep-variable monomial form")
    return mono.ep, Fraction(mono.eQ + mono.ep * ctx.shift2, 2)


def _root_inversion_sign(sm: int) -> int:
    # s_i -> i (-1)^i s_i, the image of [alpha+i]^(1/2) -> (-1)^i [alpha+i]^(1/2)
    # once Delta^(1/2) -> i Delta^(1/2) is factored out.  Even degree only.
    idx = [i for i in range(NROOTS) if sm >> i & 1]
    return (-1) ** (len(idx) // 2 + sum(idx))


def invert_vars(a: RingElem, roots: bool = False) -> RingElem:
    """Apply Q -> 1/Q, p -> 1/p.  Delta changes sign, absorbed into the numerator.

    With ``roots=True`` terms of even root degree are accepted as well, with
    s_i -> i (-1)^i s_i.  On even-degree products this is a ring map, and it
    is the one under which sigma-bar built from sigma is its inverse.
    """
    sign = -1 if a.dpow % 2 else 1
    terms = {}
    for k, c in a.terms.items():
        eQ, ep, sm = unpack(k)
        if sm and (not roots or bin(sm).count("1") % 2):
            raise UnsupportedInversion(f"cannot invert root symbols in {a!r}")
        terms[pack(-eQ, -ep, sm)] = sign * c * _root_inversion_sign(sm)
    return RingElem(a.ctx, terms, a.dpow, _canonical=True)


def to_li(a: RingElem) -> list[tuple[int, int, int]]:
    """Terms (q exponent, p exponent, coeff) of a genuine Laurent polynomial in q, p."""
    if a.dpow:
        raise NotAPolynomial(f"denominator Delta^{a.dpow} survives: {a!r}")
    out = []
    for k, c in a.terms.items():
        eQ, ep, sm = unpack(k)
        if sm:
            raise NotAPolynomial(f"root symbols survive: {a!r}")
        if eQ % 2:
            raise NotAPolynomial(f"odd power of q^(1/2) survives: {a!r}")
        out.append((eQ // 2, ep, c))
    out.sort(key=lambda t: (t[1], t[0]))
    return out
