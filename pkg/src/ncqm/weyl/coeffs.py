"""Exact coefficient field for the deformed Weyl algebra.

Elements are sums ``c00 + c10*xi + c01*sigma + c11*xi*sigma`` where every
``c`` is a Gaussian rational function ``re + i*im`` in the real symbols
``hbar, eta, theta, mu, omega``. The formal roots obey

    xi**2    = 1 / (1 + theta*eta / (4*hbar**2))
    sigma**2 = mu*omega / (2*hbar)

so stored root exponents are 0 or 1. The real and imaginary parts are kept
as canonical sympy fraction-field elements over QQ (gcd-free, positive
denominator leading coefficient), which makes equality a plain comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field

SYMBOLS = ("hbar", "eta", "theta", "mu", "omega")
ROOT_SYMBOLS = ("xi", "sigma")

RATFUNC, HBAR, ETA, THETA, MU, OMEGA = field(",".join(SYMBOLS), QQ)
_GENS = dict(zip(SYMBOLS, (HBAR, ETA, THETA, MU, OMEGA)))
_ZERO = RATFUNC(0)

Number = Union[int, Fraction]
Parity = tuple  # (xi_parity, sigma_parity)


class DomainError(ArithmeticError):
    """A substitution or inversion produced a vanishing denominator."""


def ratfunc(value) -> FracElement:
    """Coerce an int, Fraction or fraction-field element into the field."""
    if isinstance(value, FracElement):
        return value
    if isinstance(value, Fraction):
        return RATFUNC(QQ(value.numerator, value.denominator))
    if isinstance(value, int):
        return RATFUNC(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to a rational function")


@dataclass(frozen=True)
class Roots:
    """Values of xi**2 and sigma**2 that the reduction rules rewrite to."""

    xi_sq: FracElement
    sigma_sq: FracElement


DEFAULT_ROOTS = Roots(
    xi_sq=4 * HBAR**2 / (4 * HBAR**2 + THETA * ETA),
    sigma_sq=MU * OMEGA / (2 * HBAR),
)


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _compose(frac: FracElement, images: Mapping[int, FracElement]) -> FracElement:
    """Replace generator ``k`` by ``images[k]`` in a fraction-field element."""

    def poly(p):
        total = _ZERO
        for monom, coeff in p.terms():
            term = RATFUNC(coeff)
            for k, e in enumerate(monom):
                if e:
                    term *= (images[k] if k in images else RATFUNC.gens[k]) ** e
            total += term
        return total

    num = poly(frac.numer)
    den = poly(frac.denom)
    if not den:
        raise DomainError(f"denominator {frac.denom.as_expr()} vanishes under substitution")
    return num / den


def _eval_frac(frac: FracElement, values: Mapping[str, complex]) -> complex:
    point = [values[s] for s in SYMBOLS]

    def poly(p):
        total = 0j
        for monom, coeff in p.terms():
            term = complex(float(coeff))
            for v, e in zip(point, monom):
                if e:
                    term *= v**e
            total += term
        return total

    den = poly(frac.denom)
    if den == 0:
        raise DomainError(f"denominator {frac.denom.as_expr()} vanishes at {dict(values)}")
    return poly(frac.numer) / den


class CoeffField:
    """Immutable element of the four-component coefficient field."""

    __slots__ = ("_parts", "_roots", "_hash")

    def __init__(self, parts: Mapping[Parity, tuple] | None = None, roots: Roots = DEFAULT_ROOTS):
        clean = {}
        for key, (re, im) in (parts or {}).items():
            re, im = ratfunc(re), ratfunc(im)
            if re or im:
                clean[key] = (re, im)
        self._parts = clean
        self._roots = roots
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, re: Number | FracElement = 0, im: Number | FracElement = 0, roots: Roots = DEFAULT_ROOTS):
        return cls({(0, 0): (re, im)}, roots)

    @classmethod
    def symbol(cls, name: str) -> "CoeffField":
        if name == "xi":
            return cls({(1, 0): (1, 0)})
        if name == "sigma":
            return cls({(0, 1): (1, 0)})
        try:
            return cls({(0, 0): (_GENS[name], 0)})
        except KeyError:
            raise KeyError(f"unknown parameter symbol {name!r}") from None

    @classmethod
    def coerce(cls, value) -> "CoeffField":
        if isinstance(value, CoeffField):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls.const(value)

    # accessors ----------------------------------------------------------
    @property
    def roots(self) -> Roots:
        return self._roots

    @property
    def parts(self) -> dict:
        """Mapping ``(xi_parity, sigma_parity) -> (re, im)``; zero parts omitted."""
        return dict(self._parts)

    def part(self, xi_parity: int = 0, sigma_parity: int = 0) -> tuple:
        return self._parts.get((xi_parity, sigma_parity), (_ZERO, _ZERO))

    def is_zero(self) -> bool:
        return not self._parts

    def is_rational(self) -> bool:
        """True when only the root-free component is present."""
        return set(self._parts) <= {(0, 0)}

    # arithmetic ---------------------------------------------------------
    def _uses_roots(self) -> bool:
        return not self.is_rational()

    def _check(self, other: "CoeffField"):
        # root-free elements are valid in every context
        if other._roots != self._roots and self._uses_roots() and other._uses_roots():
            raise ValueError("coefficients carry different root reduction rules")

    def _ctx(self, other: "CoeffField") -> Roots:
        if other._uses_roots() and not self._uses_roots():
            return other._roots
        return self._roots

    def __add__(self, other):
        other = CoeffField.coerce(other)
        self._check(other)
        out = dict(self._parts)
        for key, val in other._parts.items():
            cur = out.get(key)
            out[key] = val if cur is None else (cur[0] + val[0], cur[1] + val[1])
        return CoeffField(out, self._ctx(other))

    __radd__ = __add__

    def __neg__(self):
        return CoeffField({k: (-re, -im) for k, (re, im) in self._parts.items()}, self._roots)

    def __sub__(self, other):
        return self + (-CoeffField.coerce(other))

    def __rsub__(self, other):
        return CoeffField.coerce(other) - self

    def __mul__(self, other):
        other = CoeffField.coerce(other)
        self._check(other)
        roots = self._ctx(other)
        out: dict = {}
        for (x1, s1), a in self._parts.items():
            for (x2, s2), b in other._parts.items():
                re, im = _cmul(a, b)
                if x1 and x2:
                    re, im = re * roots.xi_sq, im * roots.xi_sq
                if s1 and s2:
                    re, im = re * roots.sigma_sq, im * roots.sigma_sq
                key = (x1 ^ x2, s1 ^ s2)
                cur = out.get(key)
                out[key] = (re, im) if cur is None else (cur[0] + re, cur[1] + im)
        return CoeffField(out, roots)

    __rmul__ = __mul__

    def _flip(self, index: int) -> "CoeffField":
        return CoeffField(
            {k: ((-re, -im) if k[index] else (re, im)) for k, (re, im) in self._parts.items()},
            self._roots,
        )

    def inverse(self) -> "CoeffField":
        """Multiplicative inverse via conjugation in each formal root."""
        if not self._parts:
            raise ZeroDivisionError("inverse of zero coefficient")
        xi_conj = self._flip(0)
        step = self * xi_conj
        sigma_conj = step._flip(1)
        norm = step * sigma_conj
        re, im = norm.part(0, 0)
        mod = re * re + im * im
        if not mod:
            raise DomainError("coefficient has vanishing norm")
        inv = CoeffField.const(re / mod, -im / mod, self._roots)
        return xi_conj * sigma_conj * inv

    def __truediv__(self, other):
        return self * CoeffField.coerce(other).inverse()

    def __rtruediv__(self, other):
        return CoeffField.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CoeffField.const(1, roots=self._roots)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CoeffField":
        """Complex conjugate; symbols and roots are real."""
        return CoeffField({k: (re, -im) for k, (re, im) in self._parts.items()}, self._roots)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CoeffField.const(other, roots=self._roots)
        if not isinstance(other, CoeffField):
            return NotImplemented
        if self._parts != other._parts:
            return False
        return not self._uses_roots() or self._roots == other._roots

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._parts.items()))
        return self._hash

    # substitution / evaluation -------------------------------------------
    def substitute(self, bindings: Mapping[str, "CoeffField"]) -> "CoeffField":
        """Bind parameter symbols (and optionally ``xi``/``sigma``) to values.

        Parameter bindings must be root-free. A root binding is accepted
        only if its square equals the reduced value of that root's square
        after the parameter bindings are applied.
        """
        images = {}
        for name, value in bindings.items():
            if name in ROOT_SYMBOLS:
                continue
            if name not in _GENS:
                raise KeyError(f"unknown parameter symbol {name!r}")
            value = CoeffField.coerce(value)
            if not value.is_rational() or value.part(0, 0)[1]:
                raise ValueError(f"binding for {name!r} must be a real rational function")
            images[SYMBOLS.index(name)] = value.part(0, 0)[0]

        def sub(f):
            return _compose(f, images) if images else f

        roots = Roots(sub(self._roots.xi_sq), sub(self._roots.sigma_sq))
        parts = {k: (sub(re), sub(im)) for k, (re, im) in self._parts.items()}
        out = CoeffField(parts, roots)
        for index, name in enumerate(ROOT_SYMBOLS):
            if name in bindings:
                out = out._bind_root(index, name, CoeffField.coerce(bindings[name]))
            else:
                out = out._fold_rational_root(index, name)
        return out

    def _fold_rational_root(self, index: int, name: str) -> "CoeffField":
        """Replace a root by its positive value when its square is a rational square."""
        square = self._roots.xi_sq if index == 0 else self._roots.sigma_sq
        if not (square.numer.is_ground and square.denom.is_ground):
            return self
        value = Fraction(str(QQ.to_sympy(square.numer.LC / square.denom.LC)))
        if value <= 0:
            return self
        num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if num * num != value.numerator or den * den != value.denominator:
            return self
        if not any(key[index] for key in self._parts):
            return self
        return self._bind_root(index, name, CoeffField.const(Fraction(num, den)))

    def _bind_root(self, index: int, name: str, value: "CoeffField") -> "CoeffField":
        if not value.is_rational():
            raise ValueError(f"binding for {name!r} must be root-free")
        value = CoeffField(value._parts, self._roots)
        square = self._roots.xi_sq if index == 0 else self._roots.sigma_sq
        if value * value != CoeffField.const(square, roots=self._roots):
            raise DomainError(f"{name} cannot be bound: its square reduces to {square.as_expr()}")
        out = CoeffField(roots=self._roots)
        for key, comp in self._parts.items():
            term = CoeffField({(0, key[1]) if index == 0 else (key[0], 0): comp}, self._roots)
            if key[index]:
                term = term * value
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numeric value at a parameter point; roots take their positive branch."""
        xi = cmath.sqrt(_eval_frac(self._roots.xi_sq, values))
        sigma = cmath.sqrt(_eval_frac(self._roots.sigma_sq, values))
        total = 0j
        for (xp, sp), (re, im) in self._parts.items():
            total += (_eval_frac(re, values) + 1j * _eval_frac(im, values)) * xi**xp * sigma**sp
        return total

    # rendering ----------------------------------------------------------
    def __str__(self):
        if not self._parts:
            return "0"
        chunks = []
        for key in sorted(self._parts):
            re, im = self._parts[key]
            text = f"({re.as_expr()}, {im.as_expr()})"
            if key[0]:
                text += "*xi"
            if key[1]:
                text += "*sigma"
            chunks.append(text)
        return " + ".join(chunks)

    def __repr__(self):
        return f"CoeffField({self})"


ZERO = CoeffField()
ONE = CoeffField.const(1)
I = CoeffField.const(0, 1)
