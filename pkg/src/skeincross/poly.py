"""Exact sparse polynomials over the integers.

Two rings are provided:

* :class:`LaurentPoly` -- Z[A, A^-1], keys are integer exponents of ``A``.
* :class:`SkeinPoly` -- Z[A, A^-1][B, C], keys are ``(a, b, c)`` exponent
  triples with ``b, c >= 0``.

Values are immutable and always stored in canonical form (no zero
coefficients), so ``==`` and ``hash`` compare mathematical values.
Coefficients are Python ints and never overflow.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "SkeinPoly",
    "NotDivisible",
    "ParseError",
    "A",
    "DELTA",
    "add",
    "mul",
    "eval_bc",
    "exact_div",
    "mirror_a",
    "parse",
    "parse_skein",
    "format_poly",
    "neg_a_power",
]


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the remainder is nonzero."""


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _SparsePoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            k = self._check_key(k)
            acc[k] = acc.get(k, 0) + int(c)
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @staticmethod
    def _check_key(k):
        raise NotImplementedError

    @staticmethod
    def _key_add(k1, k2):
        raise NotImplementedError

    @classmethod
    def _from_clean(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict:
        """Copy of the ``{key: coefficient}`` mapping."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, int):
            return type(self).constant(other)
        if isinstance(self, SkeinPoly) and isinstance(other, LaurentPoly):
            return SkeinPoly.from_laurent(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        key_add = self._key_add
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = key_add(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return self._from_clean({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            # only units invert: +-A^k, and only when no B or C is present
            if len(self._terms) != 1:
                raise ValueError("negative powers need a unit monomial")
            (k, c), = self._terms.items()
            if abs(c) != 1 or (isinstance(k, tuple) and k[1:] != (0, 0)):
                raise ValueError("negative powers need a unit monomial")
            inv = (-k[0], 0, 0) if isinstance(k, tuple) else -k
            return type(self)._from_clean({inv: c}) ** (-n)
        result = type(self).constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int):
        if not c:
            return self._from_clean({})
        return self._from_clean({k: v * c for k, v in self._terms.items()})


class LaurentPoly(_SparsePoly):
    """Integer Laurent polynomial in ``A``."""

    __slots__ = ()

    @staticmethod
    def _check_key(k):
        return int(k)

    @staticmethod
    def _key_add(k1, k2):
        return k1 + k2

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``A**e``."""
        return self._from_clean({k + e: c for k, c in self._terms.items()})

    def coefficient(self, e: int) -> int:
        return self._terms.get(e, 0)

    def min_degree(self) -> int:
        return min(self._terms)

    def max_degree(self) -> int:
        return max(self._terms)

    def to_json(self) -> list:
        return [[e, c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((int(e), int(c)) for e, c in data)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


class SkeinPoly(_SparsePoly):
    """Integer polynomial in ``A^{+-1}``, ``B`` and ``C``."""

    __slots__ = ()

    @staticmethod
    def _check_key(k):
        a, b, c = k
        a, b, c = int(a), int(b), int(c)
        if b < 0 or c < 0:
            raise ValueError(f"negative B/C degree in key {k!r}")
        return (a, b, c)

    @staticmethod
    def _key_add(k1, k2):
        return (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])

    @classmethod
    def constant(cls, c: int) -> "SkeinPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 0, coeff: int = 1) -> "SkeinPoly":
        return cls({(a, b, c): coeff})

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "SkeinPoly":
        return cls._from_clean({(e, 0, 0): c for e, c in p.items()})

    def bc_degrees(self) -> set[int]:
        """Set of total ``B``+``C`` degrees occurring in the terms."""
        return {b + c for (_, b, c) in self._terms}

    def coefficient_bc(self, b: int, c: int) -> LaurentPoly:
        """The Laurent coefficient of ``B**b * C**c``."""
        return LaurentPoly._from_clean(
            {a: v for (a, bb, cc), v in self._terms.items() if bb == b and cc == c}
        )

    def mirror_a(self) -> "SkeinPoly":
        return self._from_clean({(-a, b, c): v for (a, b, c), v in self._terms.items()})

    def substitute_c(self, b_factor: int = -1) -> "SkeinPoly":
        """Substitute ``C -> b_factor * B``."""
        out: dict = {}
        for (a, b, c), v in self._terms.items():
            k = (a, b + c, 0)
            out[k] = out.get(k, 0) + v * b_factor**c
        return self._from_clean({k: v for k, v in out.items() if v})

    def to_json(self) -> list:
        return [[list(k), c] for k, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "SkeinPoly":
        return cls((tuple(k), c) for k, c in data)

    def __repr__(self):
        return f"SkeinPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


A = LaurentPoly.monomial(1)
DELTA = LaurentPoly({2: -1, -2: -1})


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def neg_a_power(k: int) -> LaurentPoly:
    """``(-A)**k`` for any integer ``k``."""
    return LaurentPoly({k: -1 if k % 2 else 1})


def eval_bc(p: SkeinPoly | LaurentPoly, b: LaurentPoly | int, c: LaurentPoly | int) -> LaurentPoly:
    """Substitute ``B -> b`` and ``C -> c``; the result lives in Z[A, A^-1]."""
    if isinstance(p, LaurentPoly):
        return p
    b = b if isinstance(b, LaurentPoly) else LaurentPoly.constant(b)
    c = c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c)
    bpow: dict[int, LaurentPoly] = {}
    cpow: dict[int, LaurentPoly] = {}
    grouped: dict[tuple[int, int], dict[int, int]] = {}
    for (a, bd, cd), v in p.items():
        grouped.setdefault((bd, cd), {})[a] = v
    out = LaurentPoly()
    for (bd, cd), coeffs in grouped.items():
        if bd not in bpow:
            bpow[bd] = b**bd
        if cd not in cpow:
            cpow[cd] = c**cd
        out = out + LaurentPoly(coeffs) * bpow[bd] * cpow[cd]
    return out


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p`` or raise :class:`NotDivisible`."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly()
    q_lo, q_hi = q.min_degree(), q.max_degree()
    q_lead = q.coefficient(q_hi)
    rem = dict(p.items())
    quot: dict[int, int] = {}
    qt = list(q.items())
    while rem:
        top = max(rem)
        if top - q_hi < min(rem) - q_lo:
            raise NotDivisible(f"{p} is not divisible by {q}")
        c, r = divmod(rem[top], q_lead)
        if r:
            raise NotDivisible(f"{p} is not divisible by {q}")
        shift = top - q_hi
        quot[shift] = c
        for e, v in qt:
            k = e + shift
            nv = rem.get(k, 0) - c * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return LaurentPoly(quot)


def mirror_a(p):
    """The substitution ``A -> A^-1``."""
    if isinstance(p, SkeinPoly):
        return p.mirror_a()
    return LaurentPoly._from_clean({-e: c for e, c in p.items()})


# ---------------------------------------------------------------- text form

def _fmt_var(name: str, e: int) -> str:
    if e == 1:
        return name
    return f"{name}^{e}"


def _fmt_term(coeff: int, factors: list[str]) -> str:
    mag = abs(coeff)
    if not factors:
        body = str(mag)
    elif mag == 1:
        body = "*".join(factors)
    else:
        body = f"{mag}*" + "*".join(factors)
    return body


def format_poly(p) -> str:
    """Canonical text, terms in ascending ``A`` exponent.

    ``LaurentPoly`` renders as ``A^-6 + A^-4 + A^4``; ``SkeinPoly`` terms
    carry ``*B^b*C^c`` factors and sort by ``(a, b, c)``.
    """
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for key, c in sorted(p.items()):
        if isinstance(p, SkeinPoly):
            a, b, cc = key
            factors = []
            if a:
                factors.append(_fmt_var("A", a))
            if b:
                factors.append(_fmt_var("B", b))
            if cc:
                factors.append(_fmt_var("C", cc))
        else:
            factors = [_fmt_var("A", key)] if key else []
        body = _fmt_term(c, factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_FACTOR = re.compile(r"([ABC])(?:\^\{?\(?(-?\d+)\)?\}?)?|(\d+)")


def _parse_terms(text: str, allowed: str):
    """Yield ``(coeff, {var: exp})`` per signed monomial."""
    i, n = 0, len(text)
    sign_seen = True
    sign = 1
    got_any = False
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        ch = text[i]
        if ch in "+-":
            if sign_seen and got_any:
                raise ParseError("unexpected sign", i)
            sign = sign * (-1 if ch == "-" else 1)
            sign_seen = True
            i += 1
            continue
        if not sign_seen:
            raise ParseError("expected '+' or '-'", i)
        coeff = 1
        exps: dict[str, int] = {}
        expect_factor = True
        while i < n and expect_factor:
            m = _FACTOR.match(text, i)
            if not m:
                raise ParseError("expected a number or variable", i)
            if m.group(3) is not None:
                coeff *= int(m.group(3))
            else:
                var = m.group(1)
                if var not in allowed:
                    raise ParseError(f"variable {var} not allowed here", i)
                e = int(m.group(2)) if m.group(2) is not None else 1
                if var != "A" and e < 0:
                    raise ParseError(f"negative power of {var}", i)
                exps[var] = exps.get(var, 0) + e
            i = m.end()
            j = i
            while j < n and text[j].isspace():
                j += 1
            if j < n and text[j] == "*":
                i = j + 1
                while i < n and text[i].isspace():
                    i += 1
                if i >= n:
                    raise ParseError("dangling '*'", i)
            else:
                expect_factor = False
        yield sign * coeff, exps
        got_any = True
        sign = 1
        sign_seen = False
    if not got_any:
        raise ParseError("empty polynomial", 0)
    if sign_seen:
        raise ParseError("dangling sign", n)


def parse(text: str) -> LaurentPoly:
    """Parse ``c*A^e`` sums; ``format_poly`` output round-trips."""
    terms: dict[int, int] = {}
    for c, exps in _parse_terms(text, "A"):
        e = exps.get("A", 0)
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(terms)


def parse_skein(text: str) -> SkeinPoly:
    terms: dict[tuple, int] = {}
    for c, exps in _parse_terms(text, "ABC"):
        k = (exps.get("A", 0), exps.get("B", 0), exps.get("C", 0))
        terms[k] = terms.get(k, 0) + c
    return SkeinPoly(terms)
