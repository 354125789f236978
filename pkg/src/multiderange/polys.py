"""Exact polynomial arithmetic over arbitrary-precision integers.

Three immutable representations:

  AlphaPoly -- dense polynomial in the cycle-marking variable ``a``: a tuple
               of int coefficients, ascending powers, no trailing zeros.
               The zero polynomial is the empty tuple.
  XPoly     -- dense polynomial in ``x`` whose coefficients are AlphaPoly.
  BivarPoly -- sparse polynomial in ``(n, a)``: a map (deg_n, deg_a) -> int
               with no zero entries.  Recurrence-operator coefficients are
               sparse in (n, a), hence the map.

Coefficients are Python ints throughout, so there is no overflow and no
rounding anywhere.  divide_exact works over Fraction internally but only
accepts remainder-free, integral quotients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import gcd
from typing import Iterable, Iterator, Mapping


class SchemaError(ValueError):
    """A serialized record does not match its documented schema."""


class InexactDivision(ArithmeticError):
    """Polynomial division left a remainder or a fractional coefficient."""


def _as_int(c) -> int:
    # bool is an int subclass and harmless; reject floats/Fractions loudly.
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficients must be int, got {type(c).__name__}")


class AlphaPoly:
    """Dense univariate polynomial in ``a`` with integer coefficients."""

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        cs = [_as_int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("AlphaPoly is immutable")

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coeff(self, m: int) -> int:
        """Coefficient of a^m (0 beyond the stored range)."""
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlphaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> AlphaPoly:
        return AlphaPoly(-c for c in self.coeffs)

    def __add__(self, other) -> AlphaPoly:
        if isinstance(other, int):
            other = AlphaPoly((other,))
        if not isinstance(other, AlphaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return AlphaPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> AlphaPoly:
        return self + (-other)

    def __rsub__(self, other) -> AlphaPoly:
        return (-self) + other

    def __mul__(self, other) -> AlphaPoly:
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            return AlphaPoly(c * other for c in self.coeffs)
        if not isinstance(other, AlphaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return AlphaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> AlphaPoly:
        if e < 0:
            raise ValueError("negative power")
        out = ALPHA_ONE
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, v: int) -> int:
        """Exact Horner evaluation at an integer."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __repr__(self) -> str:
        return f"AlphaPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return render_terms([((m,), c) for m, c in enumerate(self.coeffs)], ("a",))


_ZERO = AlphaPoly()
ALPHA_ONE = AlphaPoly((1,))
ALPHA_VAR = AlphaPoly((0, 1))


def render_terms(terms, names: tuple[str, ...]) -> str:
    """Human-readable form, descending exponents, explicit signs."""
    items = [(e, c) for e, c in terms if c]
    if not items:
        return "0"
    items.sort(key=lambda t: t[0], reverse=True)
    parts: list[str] = []
    for exps, c in items:
        mag = abs(c)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


@cache
def rising_factorial(m: int) -> AlphaPoly:
    """The product a(a+1)...(a+m-1); 1 when m = 0.

    This is both the all-permutations cycle enumerator of m elements and the
    normalized weight moment of x^m, which is why it shows up everywhere.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return ALPHA_ONE
    return rising_factorial(m - 1) * AlphaPoly((m - 1, 1))


def divide_exact(num: AlphaPoly, den: AlphaPoly) -> AlphaPoly:
    """Quotient num/den, required to be exact with integer coefficients.

    Raises InexactDivision on a nonzero remainder or fractional quotient
    coefficient; either one means the caller's inputs are inconsistent.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return _ZERO
    if num.degree < den.degree:
        raise InexactDivision(f"degree {num.degree} < divisor degree {den.degree}")
    rem = [Fraction(c) for c in num.coeffs]
    dc = den.coeffs
    lead = Fraction(dc[-1])
    qlen = len(rem) - len(dc) + 1
    quot = [Fraction(0)] * qlen
    for i in range(qlen - 1, -1, -1):
        q = rem[i + len(dc) - 1] / lead
        quot[i] = q
        if q:
            for j, d in enumerate(dc):
                rem[i + j] -= q * d
    if any(rem):
        raise InexactDivision("nonzero remainder")
    if any(q.denominator != 1 for q in quot):
        raise InexactDivision("fractional quotient coefficient")
    return AlphaPoly(int(q) for q in quot)


def poly_to_record(p: AlphaPoly) -> dict:
    """Machine form: {"variable": "a", "coeffs": [decimal strings, ascending]}."""
    return {"variable": "a", "coeffs": [str(c) for c in p.coeffs]}


def poly_from_record(obj, where: str = "polynomial") -> AlphaPoly:
    """Parse the machine form back; strict about canonical shape."""
    if isinstance(obj, int):
        return AlphaPoly((obj,))
    if isinstance(obj, str):
        return AlphaPoly((_parse_int(obj, where),))
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    if obj.get("variable") != "a":
        raise SchemaError(f"{where}.variable: expected \"a\"")
    coeffs = obj.get("coeffs")
    if not isinstance(coeffs, list):
        raise SchemaError(f"{where}.coeffs: expected a list")
    out = [_parse_int(c, f"{where}.coeffs[{i}]") for i, c in enumerate(coeffs)]
    if out and out[-1] == 0:
        raise SchemaError(f"{where}.coeffs: trailing zero entry")
    return AlphaPoly(out)


def _parse_int(value, where: str) -> int:
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise SchemaError(f"{where}: not a decimal integer: {value!r}") from None
    raise SchemaError(f"{where}: expected a decimal string")


class XPoly:
    """Dense polynomial in ``x`` with AlphaPoly coefficients."""

    __slots__ = ("coeffs",)

    coeffs: tuple[AlphaPoly, ...]

    def __init__(self, coeffs: Iterable[AlphaPoly] = ()) -> None:
        cs = []
        for c in coeffs:
            if isinstance(c, int):
                c = AlphaPoly((c,))
            if not isinstance(c, AlphaPoly):
                raise TypeError("XPoly coefficients must be AlphaPoly or int")
            cs.append(c)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, m: int) -> AlphaPoly:
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return _ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: XPoly) -> XPoly:
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly(out)

    def __mul__(self, other: XPoly) -> XPoly:
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPoly()
        out: list[AlphaPoly] = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return XPoly(out)

    def eval_at(self, a_value: int, x_value: int) -> int:
        """Exact evaluation at integer a and x."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x_value + c(a_value)
        return acc

    def __repr__(self) -> str:
        return f"XPoly({list(self.coeffs)!r})"


class BivarPoly:
    """Sparse polynomial in (n, a): {(deg_n, deg_a): coefficient}."""

    __slots__ = ("terms",)

    terms: dict[tuple[int, int], int]

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()) -> None:
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (p, q), c in items:
            c = _as_int(c)
            if p < 0 or q < 0:
                raise ValueError("negative exponent")
            key = (int(p), int(q))
            acc[key] = acc.get(key, 0) + c
        object.__setattr__(
            self, "terms", {k: v for k, v in sorted(acc.items()) if v}
        )

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    @classmethod
    def const(cls, c: int) -> BivarPoly:
        return cls({(0, 0): c})

    @classmethod
    def var_n(cls) -> BivarPoly:
        return cls({(1, 0): 1})

    @classmethod
    def var_a(cls) -> BivarPoly:
        return cls({(0, 1): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> BivarPoly:
        return BivarPoly({k: -v for k, v in self.terms.items()})

    def __add__(self, other) -> BivarPoly:
        if isinstance(other, int):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivarPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> BivarPoly:
        if isinstance(other, int):
            other = BivarPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> BivarPoly:
        return (-self) + other

    def __mul__(self, other) -> BivarPoly:
        if isinstance(other, int):
            return BivarPoly({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                k = (p1 + p2, q1 + q2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BivarPoly:
        if e < 0:
            raise ValueError("negative power")
        out = BivarPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    @property
    def deg_n(self) -> int:
        return max((p for p, _ in self.terms), default=-1)

    @property
    def deg_a(self) -> int:
        return max((q for _, q in self.terms), default=-1)

    def eval_n(self, n: int) -> AlphaPoly:
        """Substitute an integer for n, leaving a polynomial in a."""
        if not self.terms:
            return _ZERO
        out = [0] * (self.deg_a + 1)
        for (p, q), c in self.terms.items():
            out[q] += c * n**p
        return AlphaPoly(out)

    def eval_at(self, n: int, a: int) -> int:
        return sum(c * n**p * a**q for (p, q), c in self.terms.items())

    def substitute_a(self, a: int) -> BivarPoly:
        """Substitute an integer for a, leaving a polynomial in n."""
        out: dict[tuple[int, int], int] = {}
        for (p, q), c in self.terms.items():
            k = (p, 0)
            out[k] = out.get(k, 0) + c * a**q
        return BivarPoly(out)

    def content(self) -> int:
        """gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def div_int(self, d: int) -> BivarPoly:
        """Exact division of every coefficient by a common integer factor."""
        if any(c % d for c in self.terms.values()):
            raise InexactDivision(f"content division by {d} is not exact")
        return BivarPoly({k: c // d for k, c in self.terms.items()})

    def leading_coefficient(self) -> int:
        """Coefficient of the lexicographically largest term (n before a)."""
        if not self.terms:
            return 0
        return self.terms[max(self.terms)]

    def monomials(self) -> Iterator[tuple[int, int, int]]:
        """(deg_n, deg_a, coefficient) triples, sorted by (deg_n, deg_a)."""
        for (p, q), c in sorted(self.terms.items()):
            yield p, q, c

    def __repr__(self) -> str:
        return f"BivarPoly({self.terms!r})"

    def __str__(self) -> str:
        return render_terms(list(self.terms.items()), ("n", "a"))


BIVAR_N = BivarPoly.var_n()
BIVAR_A = BivarPoly.var_a()
