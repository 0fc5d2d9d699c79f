"""Normal-ordered polynomials in the two-mode Heisenberg-Weyl algebra.

A monomial ``(a, b, c, d)`` stands for ``x1^a x2^b p1^c p2^d``: positions
left of momenta, index 1 before index 2. Products are brought back to this
order with ``p_i x_j = x_j p_i - i*hbar*delta_ij``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, NamedTuple

from .coeffs import HBAR, CoeffField, ONE, ZERO

MAX_DEGREE = 16


class ResourceError(RuntimeError):
    """Raised when a product would exceed the supported total degree."""


class NCMonomial(NamedTuple):
    x1: int = 0
    x2: int = 0
    p1: int = 0
    p2: int = 0

    @property
    def degree(self) -> int:
        return self.x1 + self.x2 + self.p1 + self.p2

    def __str__(self):
        parts = []
        for name, e in zip(("x1", "x2", "p1", "p2"), self):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


UNIT = NCMonomial()


class GeneratorKind(enum.Enum):
    X1 = "x1"
    X2 = "x2"
    P1 = "p1"
    P2 = "p2"
    TX1 = "tx1"
    TX2 = "tx2"
    TP1 = "tp1"
    TP2 = "tp2"
    A1 = "a1"
    A2 = "a2"
    A1DAG = "a1d"
    A2DAG = "a2d"


class NCPolynomial:
    """Immutable finite map from :class:`NCMonomial` to :class:`CoeffField`."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[NCMonomial, CoeffField] | None = None):
        self._terms = {NCMonomial(*m): c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def scalar(cls, value) -> "NCPolynomial":
        return cls({UNIT: CoeffField.coerce(value)})

    @classmethod
    def coerce(cls, value) -> "NCPolynomial":
        if isinstance(value, NCPolynomial):
            return value
        return cls.scalar(value)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def constant(self) -> CoeffField:
        """Coefficient of the unit monomial."""
        return self._terms.get(UNIT, ZERO)

    def is_scalar(self) -> bool:
        return set(self._terms) <= {UNIT}

    def __add__(self, other):
        other = NCPolynomial.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return NCPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-NCPolynomial.coerce(other))

    def __rsub__(self, other):
        return NCPolynomial.coerce(other) - self

    def __mul__(self, other):
        return poly_mul(self, NCPolynomial.coerce(other))

    def __rmul__(self, other):
        return poly_mul(NCPolynomial.coerce(other), self)

    def __truediv__(self, other):
        inv = CoeffField.coerce(other).inverse()
        return NCPolynomial({m: c * inv for m, c in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of operators are not supported")
        if n * self.degree > MAX_DEGREE:
            raise ResourceError(f"power would reach degree {n * self.degree} > {MAX_DEGREE}")
        out = NCPolynomial.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CoeffField)):
            other = NCPolynomial.scalar(other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def scale(self, c) -> "NCPolynomial":
        c = CoeffField.coerce(c)
        return NCPolynomial({m: v * c for m, v in self._terms.items()})

    def map_coefficients(self, fn) -> "NCPolynomial":
        return NCPolynomial({m: fn(c) for m, c in self._terms.items()})

    def substitute(self, bindings) -> "NCPolynomial":
        return substitute(self, bindings)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"NCPolynomial({render(self)})"


def render(p: NCPolynomial) -> str:
    """Canonical text: terms sorted by exponent tuple, ``coeff*monomial``."""
    if p.is_zero():
        return "0"
    rows = []
    for m in sorted(p.terms):
        c = p.terms[m]
        rows.append(f"[{c}]" if m == UNIT else f"[{c}]*{m}")
    return " + ".join(rows)


def _mode_reorder(c: int, b: int):
    """``p^c x^b`` as ``sum_k coeff_k * (-i hbar)^k x^(b-k) p^(c-k)``."""
    for k in range(min(b, c) + 1):
        yield k, comb(c, k) * comb(b, k) * factorial(k)


_MINUS_I_HBAR = CoeffField.const(0, -HBAR)


def normal_order_product(m1: NCMonomial, m2: NCMonomial) -> NCPolynomial:
    """Normal-ordered expansion of the word ``m1 * m2``."""
    m1, m2 = NCMonomial(*m1), NCMonomial(*m2)
    if m1.degree + m2.degree > MAX_DEGREE:
        raise ResourceError(f"product degree {m1.degree + m2.degree} exceeds {MAX_DEGREE}")
    # only p_i (from m1) passing x_i (from m2) produces contractions
    out: dict = {}
    for k1, w1 in _mode_reorder(m1.p1, m2.x1):
        for k2, w2 in _mode_reorder(m1.p2, m2.x2):
            mono = NCMonomial(
                m1.x1 + m2.x1 - k1,
                m1.x2 + m2.x2 - k2,
                m1.p1 + m2.p1 - k1,
                m1.p2 + m2.p2 - k2,
            )
            coeff = _MINUS_I_HBAR ** (k1 + k2) * (w1 * w2)
            out[mono] = out[mono] + coeff if mono in out else coeff
    return NCPolynomial(out)


def poly_mul(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    if a.is_zero() or b.is_zero():
        return NCPolynomial()
    if a.degree + b.degree > MAX_DEGREE:
        raise ResourceError(f"product degree {a.degree + b.degree} exceeds {MAX_DEGREE}")
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            c = ca * cb
            for m, w in normal_order_product(ma, mb).terms.items():
                term = c * w
                out[m] = out[m] + term if m in out else term
    return NCPolynomial(out)


def commutator(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    a, b = NCPolynomial.coerce(a), NCPolynomial.coerce(b)
    return poly_mul(a, b) - poly_mul(b, a)


def substitute(p: NCPolynomial, bindings: Mapping[str, object]) -> NCPolynomial:
    """Bind parameter symbols in every coefficient; see ``CoeffField.substitute``."""
    if not bindings:
        return p
    coerced = {k: CoeffField.coerce(_scalar_of(v)) for k, v in bindings.items()}
    return p.map_coefficients(lambda c: c.substitute(coerced))


def _scalar_of(value):
    if isinstance(value, NCPolynomial):
        if not value.is_scalar():
            raise ValueError("bindings must be scalars, not operators")
        return value.constant()
    return value


# generators ---------------------------------------------------------------

def generator(name: str) -> NCPolynomial:
    exps = {"x1": (1, 0, 0, 0), "x2": (0, 1, 0, 0), "p1": (0, 0, 1, 0), "p2": (0, 0, 0, 1)}
    return NCPolynomial({NCMonomial(*exps[name]): ONE})


X1, X2, P1, P2 = (generator(n) for n in ("x1", "x2", "p1", "p2"))

_HBAR = CoeffField.symbol("hbar")
_ETA = CoeffField.symbol("eta")
_THETA = CoeffField.symbol("theta")
_XI = CoeffField.symbol("xi")
_SIGMA = CoeffField.symbol("sigma")
_MU_OMEGA = CoeffField.symbol("mu") * CoeffField.symbol("omega")

# epsilon_12 = -epsilon_21 = 1
_EPS_PARTNER = {1: (2, 1), 2: (1, -1)}


def tilde_generator(kind: GeneratorKind) -> NCPolynomial:
    """Phase-space map to the noncommutative variables.

    p~_i = xi*(p_i + eta*eps_ij*x_j/(2 hbar)),  x~_i = xi*(x_i - theta*eps_ij*p_j/(2 hbar)).
    """
    kind = GeneratorKind(kind)
    xs, ps = {1: X1, 2: X2}, {1: P1, 2: P2}
    i = int(kind.value[-1])
    j, eps = _EPS_PARTNER[i]
    if kind in (GeneratorKind.TP1, GeneratorKind.TP2):
        shift = xs[j].scale(_ETA * eps / (2 * _HBAR))
        return (ps[i] + shift).scale(_XI)
    if kind in (GeneratorKind.TX1, GeneratorKind.TX2):
        shift = ps[j].scale(_THETA * eps / (2 * _HBAR))
        return (xs[i] - shift).scale(_XI)
    raise ValueError(f"{kind} is not a tilde generator")


def ladder_operator(mode: int, dagger: bool) -> NCPolynomial:
    """``sigma*(x~_i -+ i p~_i/(mu omega))``; minus sign for the creation operator."""
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    tx = tilde_generator(GeneratorKind(f"tx{mode}"))
    tp = tilde_generator(GeneratorKind(f"tp{mode}"))
    sign = -1 if dagger else 1
    return (tx + tp.scale(CoeffField.const(0, sign) / _MU_OMEGA)).scale(_SIGMA)


def expand_generator(kind: GeneratorKind) -> NCPolynomial:
    """Any generator kind as a polynomial in x1, x2, p1, p2."""
    kind = GeneratorKind(kind)
    if kind.value in ("x1", "x2", "p1", "p2"):
        return generator(kind.value)
    if kind.value.startswith("t"):
        return tilde_generator(kind)
    return ladder_operator(int(kind.value[1]), kind.value.endswith("d"))


def word_product(factors: Iterable[NCPolynomial]) -> NCPolynomial:
    out = NCPolynomial.scalar(1)
    for f in factors:
        out = out * f
    return out
