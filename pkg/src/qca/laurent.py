"""Exact Laurent polynomials over Z in v = q^(1/2), and in (u, v) with u = p^(1/2).

Half-integer powers of q and p never appear: q^(x/2) is stored as v^x.
Both classes are immutable and hashable; zero coefficients are never stored.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DivisionByZero, MalformedInput, NotDivisible


class _Laurent:
    """Shared sparse-dict machinery. Subclasses fix the exponent type."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for e, c in items:
            e = self._check_exp(e)
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient must be int, got {c!r}")
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    # subclass hooks
    @staticmethod
    def _check_exp(e):
        raise NotImplementedError

    @staticmethod
    def _add_exp(a, b):
        raise NotImplementedError

    @staticmethod
    def _neg_exp(a):
        raise NotImplementedError

    @classmethod
    def _from_sorted(cls, terms: dict):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, cls):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return cls.constant(other)
        return NotImplemented

    @classmethod
    def constant(cls, c: int):
        raise NotImplementedError

    @classmethod
    def zero(cls):
        return cls._from_sorted({})

    @classmethod
    def one(cls):
        return cls.constant(1)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, tuple(self._terms.items())))
        return self._hash

    def __neg__(self):
        return self._from_sorted({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return self._from_sorted({e: c for e, c in sorted(acc.items()) if c})

    __radd__ = __add__

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
        acc: dict = {}
        add = self._add_exp
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = add(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return self._from_sorted({e: c for e, c in sorted(acc.items()) if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise NotDivisible("only monomials are invertible")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisible("only unit monomials are invertible")
            return self._from_sorted({self._neg_exp(e): c}) ** (-k)
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int):
        if c == 0:
            return self.zero()
        return self._from_sorted({e: c * x for e, x in self._terms.items()})

    def shift(self, e):
        """Multiply by the unit monomial with exponent ``e``."""
        add = self._add_exp
        return self._from_sorted({add(k, e): c for k, c in self._terms.items()})

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._zero_exp() in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(self._zero_exp(), 0)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def divide_int(self, d: int):
        """Exact division by a nonzero integer, or NotDivisible."""
        if d == 0:
            raise DivisionByZero("division by the integer 0")
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, d)
            if r:
                raise NotDivisible(f"{self} is not divisible by {d}")
            out[e] = q
        return self._from_sorted(out)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class LaurentV(_Laurent):
    """Element of Z[v, v^-1]."""

    __slots__ = ()

    @staticmethod
    def _check_exp(e):
        if not isinstance(e, int) or isinstance(e, bool):
            raise TypeError(f"v-exponent must be int, got {e!r}")
        return e

    @staticmethod
    def _add_exp(a, b):
        return a + b

    @staticmethod
    def _neg_exp(a):
        return -a

    @staticmethod
    def _zero_exp():
        return 0

    @classmethod
    def constant(cls, c: int):
        return cls._from_sorted({0: c} if c else {})

    @classmethod
    def monomial(cls, k: int, c: int = 1):
        return cls._from_sorted({k: c} if c else {})

    @property
    def min_degree(self):
        return next(iter(self._terms)) if self._terms else None

    @property
    def max_degree(self):
        return next(reversed(self._terms)) if self._terms else None

    def at_one(self) -> int:
        return sum(self._terms.values())

    def to_json(self) -> list:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentV":
        if isinstance(data, int) and not isinstance(data, bool):
            return cls.constant(data)
        if not isinstance(data, list):
            raise MalformedInput(f"Laurent polynomial must be a list of [exp, coeff], got {data!r}")
        seen = []
        for pair in data:
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
                raise MalformedInput(f"bad Laurent term {pair!r}")
            seen.append(tuple(pair))
        exps = [e for e, _ in seen]
        if exps != sorted(set(exps)) or any(c == 0 for _, c in seen):
            raise MalformedInput(f"Laurent terms must be sorted, unique and nonzero: {data!r}")
        return cls(seen)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "v"
            else:
                mono = f"v^{e}"
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            elif mono:
                s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


class LaurentUV(_Laurent):
    """Element of Z[u^{+-1}, v^{+-1}]; exponents are (u_exp, v_exp) pairs."""

    __slots__ = ()

    @staticmethod
    def _check_exp(e):
        if (not isinstance(e, tuple) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise TypeError(f"(u, v) exponent must be a pair of ints, got {e!r}")
        return e

    @staticmethod
    def _add_exp(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def _neg_exp(a):
        return (-a[0], -a[1])

    @staticmethod
    def _zero_exp():
        return (0, 0)

    @classmethod
    def constant(cls, c: int):
        return cls._from_sorted({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1):
        """c * u^a v^b."""
        return cls._from_sorted({(a, b): c} if c else {})

    @classmethod
    def from_v(cls, x: LaurentV) -> "LaurentUV":
        return cls._from_sorted({(0, e): c for e, c in x.items()})

    def to_v(self) -> LaurentV:
        """Restriction to u-degree 0 elements; raises if any u-power occurs."""
        if any(a for a, _ in self._terms):
            raise ValueError(f"{self} involves u")
        return LaurentV._from_sorted({b: c for (_, b), c in self._terms.items()})

    def at_u_one(self) -> LaurentV:
        """Specialise p = 1 (u = 1)."""
        return LaurentV([(b, c) for (_, b), c in self._terms.items()])

    def to_json(self) -> list:
        return [[a, b, c] for (a, b), c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentUV":
        if not isinstance(data, list):
            raise MalformedInput(f"LaurentUV must be a list of [u, v, coeff], got {data!r}")
        seen = []
        for t in data:
            if (not isinstance(t, list) or len(t) != 3
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in t)):
                raise MalformedInput(f"bad LaurentUV term {t!r}")
            seen.append(((t[0], t[1]), t[2]))
        exps = [e for e, _ in seen]
        if exps != sorted(set(exps)) or any(c == 0 for _, c in seen):
            raise MalformedInput(f"LaurentUV terms must be sorted, unique and nonzero: {data!r}")
        return cls(seen)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self._terms.items():
            mono = "*".join(
                s for s in (
                    "" if a == 0 else ("u" if a == 1 else f"u^{a}"),
                    "" if b == 0 else ("v" if b == 1 else f"v^{b}"),
                ) if s
            )
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


V = LaurentV.monomial(1)


def q_analog(a: int) -> LaurentV:
    """[a] = (v^a - v^-a) / (v - v^-1), the balanced q-integer in v.

    For a > 0 this is v^(a-1) + v^(a-3) + ... + v^(1-a).
    """
    if a == 0:
        return LaurentV.zero()
    if a < 0:
        return -q_analog(-a)
    return LaurentV._from_sorted({e: 1 for e in range(1 - a, a, 2)})


def laurent_divide_exact(num: LaurentV, den: LaurentV) -> LaurentV:
    """Quotient of ``num`` by ``den`` in Z[v^{+-1}].

    Raises NotDivisible when ``den`` does not divide ``num`` exactly and
    DivisionByZero when ``den`` is 0.
    """
    if not den:
        raise DivisionByZero("division by the zero Laurent polynomial")
    if not num:
        return LaurentV.zero()
    # normalise both to polynomials in v, then long division from the top
    lo_d = den.min_degree
    d = {e - lo_d: c for e, c in den.items()}
    lo_n = num.min_degree
    r = {e - lo_n: c for e, c in num.items()}
    deg_d = max(d)
    lead = d[deg_d]
    quot: dict = {}
    while r:
        top = max(r)
        if top < deg_d:
            raise NotDivisible(f"{den} does not divide {num}")
        q, rem = divmod(r[top], lead)
        if rem:
            raise NotDivisible(f"{den} does not divide {num}")
        shift = top - deg_d
        quot[shift] = q
        for e, c in d.items():
            k = e + shift
            val = r.get(k, 0) - q * c
            if val:
                r[k] = val
            else:
                r.pop(k, None)
    # num / den = v^(lo_n - lo_d) * (r / d); the constant term of d is nonzero so
    # a polynomial quotient of polynomials stays exact after the shift
    return LaurentV(quot).shift(lo_n - lo_d)
