"""Exact coefficient domains.

Rationals are ``fractions.Fraction`` (always reduced, hashable).  On top of
those sit univariate polynomials, rational functions Q(t) with the formal
derivation d/dt, multivariate polynomials, dual numbers F[eps] and rational
quaternions.  Nothing here ever rounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class ScalarError(ValueError):
    """Bad scalar input: division by zero, malformed text, etc."""


# ---------------------------------------------------------------------------
# rational text form: "num/den" with den > 0, integers as "7"
# ---------------------------------------------------------------------------

def rational_to_text(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_text(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"bad rational {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# univariate polynomials over Q, coefficients lowest degree first
# ---------------------------------------------------------------------------

class UniPoly:
    """Polynomial in t over Q.  Immutable; trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("UniPoly is immutable")

    @staticmethod
    def const(c) -> "UniPoly":
        return UniPoly([Fraction(c)])

    @staticmethod
    def t() -> "UniPoly":
        return UniPoly([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                        for i in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ScalarError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.leading()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            quo[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quo), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.leading()
        return UniPoly([c / lc for c in self.coeffs])

    def primitive_int(self) -> "UniPoly":
        """Positive rescale to integer coefficients with content 1.

        Sign is preserved, so sign-variation counts (Sturm) are unaffected.
        """
        if self.is_zero():
            return self
        from math import gcd, lcm
        den = lcm(*[c.denominator for c in self.coeffs])
        ints = [c * den for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(int(c)))
        return UniPoly([Fraction(int(c) // g) for c in ints])

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, (a % b).primitive_int()
    return a.monic()


def poly_to_text(p: UniPoly) -> str:
    """Sparse sum of "c*t^k" terms, e.g. "1 + -2*t^2"."""
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        ct = rational_to_text(c)
        if k == 0:
            parts.append(ct)
        elif k == 1:
            parts.append("t" if c == 1 else f"{ct}*t")
        else:
            parts.append(f"t^{k}" if c == 1 else f"{ct}*t^{k}")
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"^(?P<sign>[+-])?(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<t>t)(?:\^(?P<pow>\d+))?)?$"
)


def poly_from_text(text: str) -> UniPoly:
    compact = text.replace(" ", "")
    if not compact:
        raise ScalarError("empty polynomial text")
    terms = re.findall(r"[+-]?[^+\-]+", compact)
    if "".join(terms) not in (compact, compact.replace("+-", "-")):
        raise ScalarError(f"bad polynomial text {text!r}")
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group("coef") is None and m.group("t") is None):
            raise ScalarError(f"bad polynomial term {term!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        power = int(m.group("pow") or 1) if m.group("t") else 0
        coeffs[power] = coeffs.get(power, Fraction(0)) + coef
    n = max(coeffs) + 1 if coeffs else 0
    return UniPoly([coeffs.get(i, Fraction(0)) for i in range(n)])


# ---------------------------------------------------------------------------
# Sturm sequences: distinct real root count, exact over Q
# ---------------------------------------------------------------------------

def _sign_variations(signs: list[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a * b < 0)


def _sign_at_inf(p: UniPoly, positive: bool) -> int:
    if p.is_zero():
        return 0
    lc = p.leading()
    s = 1 if lc > 0 else -1
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def sturm_real_roots(p: UniPoly) -> int:
    """Number of distinct real roots of p, via a Sturm chain on the
    squarefree part.  Remainders are rescaled to primitive integer form to
    keep coefficients small (degrees here stay <= 8)."""
    if p.is_zero():
        raise ScalarError("zero polynomial has no root count")
    if p.degree <= 0:
        return 0
    g = poly_gcd(p, p.derivative())
    sf = (p.divmod(g)[0]).primitive_int()
    if sf.degree <= 0:
        return 0
    chain = [sf, sf.derivative().primitive_int()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        chain.append(r.primitive_int() if not r.is_zero() else r)
    if chain[-1].is_zero():
        chain.pop()
    v_neg = _sign_variations([_sign_at_inf(q, positive=False) for q in chain])
    v_pos = _sign_variations([_sign_at_inf(q, positive=True) for q in chain])
    return v_neg - v_pos


# ---------------------------------------------------------------------------
# rational functions Q(t) with formal derivation
# ---------------------------------------------------------------------------

class RatFun:
    """Element of Q(t), stored reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly.const(1)
        if den.is_zero():
            raise ScalarError("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly.const(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lc = den.leading()
            num = num * (1 / lc)
            den = den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(UniPoly.const(c))

    @staticmethod
    def t() -> "RatFun":
        return RatFun(UniPoly.t())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other)
        return (isinstance(other, RatFun)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ScalarError("division by zero in Q(t)")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def derive(self) -> "RatFun":
        """Formal d/dt via the quotient rule."""
        n, d = self.num, self.den
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    def __repr__(self):
        return f"RatFun({ratfun_to_text(self)!r})"


def ratfun_derive(f: RatFun) -> RatFun:
    return f.derive()


def ratfun_to_text(f: RatFun) -> str:
    return f"({poly_to_text(f.num)})/({poly_to_text(f.den)})"


def ratfun_from_text(text: str) -> RatFun:
    text = text.strip()
    m = re.match(r"^\((?P<num>.*)\)\s*/\s*\((?P<den>.*)\)$", text)
    if m:
        return RatFun(poly_from_text(m.group("num")), poly_from_text(m.group("den")))
    # bare polynomial / rational accepted for convenience
    return RatFun(poly_from_text(text))


# ---------------------------------------------------------------------------
# dual numbers F[eps], eps^2 = 0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualScalar:
    """a + b*eps over any base scalar type with ring operations."""

    re: object
    eps: object

    def __add__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.re + other.re, self.eps + other.eps)

    def __neg__(self):
        return DualScalar(-self.re, -self.eps)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.re * other.re,
                          self.re * other.eps + self.eps * other.re)

    def __truediv__(self, other: "DualScalar") -> "DualScalar":
        if _is_zero_like(other.re):
            raise ScalarError("dual-number division needs nonzero real part")
        inv_re = 1 / other.re
        re = self.re * inv_re
        return DualScalar(re, (self.eps - re * other.eps) * inv_re)


def _is_zero_like(x) -> bool:
    if isinstance(x, (RatFun, UniPoly)):
        return x.is_zero()
    return x == 0


# ---------------------------------------------------------------------------
# quaternions over Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    """a + b*i + c*j + d*k with rational components, Hamilton table."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def of(a, b=0, c=0, d=0) -> "Quaternion":
        return Quaternion(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def __add__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self) -> Fraction:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def __truediv__(self, o: "Quaternion") -> "Quaternion":
        n = o.norm_sq()
        if n == 0:
            raise ScalarError("division by zero quaternion")
        oc = o.conj()
        prod = self * oc
        return Quaternion(prod.a / n, prod.b / n, prod.c / n, prod.d / n)


# ---------------------------------------------------------------------------
# multivariate polynomials over Q (formal variables for rank / H-type tests)
# ---------------------------------------------------------------------------

class MultiPoly:
    """Polynomial in nvars variables; terms map exponent tuples to nonzero
    rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    @staticmethod
    def const(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def var(nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return MultiPoly(nvars, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def eval(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.terms!r})"


# ---------------------------------------------------------------------------
# field objects: the uniform handle the rest of the package works through
# ---------------------------------------------------------------------------

class RationalField:
    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def parse(self, text: str):
        return rational_from_text(text)

    def text(self, x) -> str:
        return rational_to_text(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def sample(self, rng, bound: int = 5):
        num = rng.choice([n for n in range(-bound, bound + 1) if n != 0])
        return Fraction(num, rng.randint(1, bound))

    def __repr__(self):
        return "Q"


class RatFunField:
    name = "Q(t)"

    @property
    def zero(self):
        return RatFun.const(0)

    @property
    def one(self):
        return RatFun.const(1)

    def from_int(self, n: int):
        return RatFun.const(n)

    def parse(self, text: str):
        return ratfun_from_text(text)

    def text(self, x) -> str:
        return ratfun_to_text(x)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def sample(self, rng, bound: int = 3):
        num = UniPoly([Fraction(rng.randint(-bound, bound)) for _ in range(rng.randint(1, 3))])
        den = UniPoly([Fraction(rng.randint(-bound, bound)) for _ in range(rng.randint(0, 2))] + [Fraction(1)])
        if num.is_zero():
            num = UniPoly.const(1)
        return RatFun(num, den)

    def __repr__(self):
        return "Q(t)"


QQ = RationalField()
QT = RatFunField()

FIELDS = {"Q": QQ, "Q(t)": QT}


def field_by_name(name: str):
    try:
        return FIELDS[name]
    except KeyError:
        raise ScalarError(f"unknown field {name!r} (expected one of {sorted(FIELDS)})") from None
