"""Exact-rational truncated and Laurent series in one named variable.

Every quantity in this package is a finite window of exact rational
coefficients.  A window is the half-open exponent range [valuation, order):
coefficients inside it are known exactly, coefficients at or above `order`
are unknown, and coefficients below `valuation` are zero (for a normalized
series the leading stored coefficient is nonzero, so "below valuation"
really is zero).  All arithmetic tracks the largest window on which the
result is exact; nothing is ever silently padded with zeros.

Window rules:

    add/sub:  valuation min(va, vb), order min(Na, Nb)
    mul:      valuation va + vb,     order min(Na + vb, Nb + va)
    div:      f * invert(g)
    derive:   order N - 1
    theta:    var * d/dvar, window preserved
    compose:  order min(Nf * vg, Ng)
    reverse/exp/log: order preserved

Scalars are gmpy2.mpq when available (much faster), fractions.Fraction
otherwise; both normalize to lowest terms with positive denominator.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational

__all__ = [
    "Rational",
    "rat",
    "rat_to_str",
    "parse_rat",
    "SeriesError",
    "VariableMismatchError",
    "WindowError",
    "LaurentSeries",
    "TruncatedSeries",
]

RationalLike = Union[int, Rational, str]

_ZERO = Rational(0)
_ONE = Rational(1)


def rat(p: RationalLike = 0, q: int = 1) -> Rational:
    """Exact rational p/q, normalized (lowest terms, q > 0)."""
    if isinstance(p, str):
        return Rational(p) / q if q != 1 else Rational(p)
    return Rational(p, q)


def rat_to_str(r: Rational) -> str:
    """Canonical form: "p" for integers, "p/q" otherwise, '-' on the numerator."""
    return str(r)


def parse_rat(s: str) -> Rational:
    """Inverse of rat_to_str; rejects whitespace and signs on the denominator."""
    t = s.strip()
    if t != s or " " in s:
        raise ValueError(f"non-canonical rational string: {s!r}")
    if "/" in s:
        num, den = s.split("/")
        if den.startswith(("-", "+")):
            raise ValueError(f"sign on denominator: {s!r}")
        return Rational(int(num), int(den))
    return Rational(int(s))


class SeriesError(Exception):
    """Base class for series failures."""


class VariableMismatchError(SeriesError):
    """Operands live in different chart variables."""


class WindowError(SeriesError):
    """Coefficient access or operation outside the known window."""


def _check_var(a: "LaurentSeries", b: "LaurentSeries") -> None:
    if a.var != b.var:
        raise VariableMismatchError(f"variable mismatch: {a.var!r} vs {b.var!r}")


class LaurentSeries:
    """Finitely many exact coefficients of var^k for k in [valuation, order).

    The stored leading coefficient is nonzero unless the series is
    identically zero on its window, in which case coeffs is empty and
    valuation == order records how far the zeros are known.
    """

    __slots__ = ("var", "valuation", "order", "coeffs")

    def __init__(self, var: str, valuation: int, coeffs: Iterable[RationalLike],
                 order: int | None = None):
        cs = [c if isinstance(c, type(_ZERO)) else rat(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs)
        if order - valuation != len(cs):
            raise SeriesError("order/valuation/coeffs length mismatch")
        # normalize: strip leading zeros into the valuation
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        self.var = var
        self.valuation = valuation + i
        self.order = order
        self.coeffs = cs[i:]

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, var: str, order: int) -> "LaurentSeries":
        """Zero on the full window (..., order): every known coefficient is 0."""
        return cls(var, order, [], order)

    @classmethod
    def monomial(cls, var: str, c: RationalLike, k: int, order: int) -> "LaurentSeries":
        """c * var^k, known up to (but not including) exponent `order`."""
        if order <= k:
            raise WindowError("monomial exponent outside requested window")
        return cls(var, k, [rat(c)] + [_ZERO] * (order - k - 1), order)

    @classmethod
    def from_poly(cls, var: str, coeffs_from_zero: Sequence[RationalLike],
                  order: int) -> "LaurentSeries":
        """Polynomial with the given coefficients, exact to `order`."""
        cs = [rat(c) for c in coeffs_from_zero]
        if len(cs) > order:
            cs = cs[:order]
        cs += [_ZERO] * (order - len(cs))
        return cls(var, 0, cs, order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.var == other.var and self.valuation == other.valuation
                and self.order == other.order and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.valuation, self.order, tuple(self.coeffs)))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs[:6]):
            if c:
                terms.append(f"{c}*{self.var}^{self.valuation + i}")
        body = " + ".join(terms) if terms else "0"
        if len(self.coeffs) > 6:
            body += " + ..."
        return f"<{body} + O({self.var}^{self.order})>"

    def agrees(self, other: "LaurentSeries") -> bool:
        """Equality of all coefficients on the common window."""
        _check_var(self, other)
        lo = min(self.valuation, other.valuation)
        hi = min(self.order, other.order)
        for k in range(lo, hi):
            if self.coeff(k) != other.coeff(k):
                return False
        return True

    def coeff(self, k: int) -> Rational:
        """Exact coefficient of var^k.  Below the valuation this is zero;
        at or above the order it is unknown and raises WindowError."""
        if k >= self.order:
            raise WindowError(
                f"coefficient of {self.var}^{k} beyond window (order {self.order})")
        if k < self.valuation:
            return _ZERO
        return self.coeffs[k - self.valuation]

    def coeff_list(self, lo: int, hi: int) -> list[Rational]:
        return [self.coeff(k) for k in range(lo, hi)]

    # ------------------------------------------------------------ arithmetic

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.var, self.valuation, [-c for c in self.coeffs],
                             self.order)

    def scale(self, c: RationalLike) -> "LaurentSeries":
        c = rat(c)
        if c == 0:
            return LaurentSeries.zero(self.var, self.order)
        return LaurentSeries(self.var, self.valuation,
                             [c * x for x in self.coeffs], self.order)

    def add(self, other: "LaurentSeries") -> "LaurentSeries":
        _check_var(self, other)
        order = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        lo = min(lo, order)
        out = [_ZERO] * (order - lo)
        for i, c in enumerate(self.coeffs):
            k = self.valuation + i
            if k < order and c:
                out[k - lo] += c
        for i, c in enumerate(other.coeffs):
            k = other.valuation + i
            if k < order and c:
                out[k - lo] += c
        return LaurentSeries(self.var, lo, out, order)

    def sub(self, other: "LaurentSeries") -> "LaurentSeries":
        return self.add(-other)

    def add_scalar(self, c: RationalLike) -> "LaurentSeries":
        return self.add(LaurentSeries.monomial(self.var, c, 0, max(self.order, 1)))

    def mul(self, other: "LaurentSeries") -> "LaurentSeries":
        _check_var(self, other)
        va, vb = self.valuation, other.valuation
        order = min(self.order + vb, other.order + va)
        lo = va + vb
        n = order - lo
        if n <= 0 or self.is_zero() or other.is_zero():
            return LaurentSeries.zero(self.var, order)
        out = [_ZERO] * n
        bc = other.coeffs
        nb = len(bc)
        for i, ai in enumerate(self.coeffs):
            if not ai:
                continue
            jmax = min(nb, n - i)
            for j in range(jmax):
                bj = bc[j]
                if bj:
                    out[i + j] += ai * bj
        return LaurentSeries(self.var, lo, out, order)

    def mul_all(self, *others: "LaurentSeries") -> "LaurentSeries":
        out = self
        for o in others:
            out = out.mul(o)
        return out

    def invert(self) -> "LaurentSeries":
        """1/f.  Needs a nonzero leading coefficient on a nonempty window."""
        if self.is_zero():
            raise WindowError("division by a series with no known nonzero coefficient")
        v = self.valuation
        a = self.coeffs
        n = len(a)
        lead = a[0]
        out = [_ZERO] * n
        out[0] = _ONE / lead
        for m in range(1, n):
            s = _ZERO
            for k in range(1, m + 1):
                ak = a[k]
                if ak:
                    s += ak * out[m - k]
            out[m] = -s / lead
        return LaurentSeries(self.var, -v, out, -v + n)

    def div(self, other: "LaurentSeries") -> "LaurentSeries":
        return self.mul(other.invert())

    def pow(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.invert().pow(-e)
        out = None
        base = self
        k = e
        while k:
            if k & 1:
                out = base if out is None else out.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        if out is None:
            # f^0 = 1 exactly; window matches what repeated products would keep
            return LaurentSeries.monomial(self.var, 1, 0, max(self.order, 1))
        return out

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by var^k (exact)."""
        return LaurentSeries(self.var, self.valuation + k, list(self.coeffs),
                             self.order + k)

    # ------------------------------------------------------------ calculus

    def derive(self) -> "LaurentSeries":
        """Coefficientwise d/dvar; output order drops by one."""
        if self.is_zero():
            if self.order <= 0:
                raise WindowError("derivative of an empty window")
            return LaurentSeries.zero(self.var, self.order - 1)
        out = []
        for i, c in enumerate(self.coeffs):
            k = self.valuation + i
            out.append(rat(k) * c)
        return LaurentSeries(self.var, self.valuation - 1, out, self.order - 1)

    def theta(self) -> "LaurentSeries":
        """var * d/dvar; the window is preserved."""
        if self.is_zero():
            if self.order <= 0:
                raise WindowError("theta of an empty window")
            return LaurentSeries.zero(self.var, self.order)
        out = [rat(self.valuation + i) * c for i, c in enumerate(self.coeffs)]
        return LaurentSeries(self.var, self.valuation, out, self.order)

    def integrate_theta(self) -> "LaurentSeries":
        """Primitive under theta: coefficient c_k -> c_k / k.  Requires no
        constant term on the window."""
        out = []
        for i, c in enumerate(self.coeffs):
            k = self.valuation + i
            if k == 0:
                if c:
                    raise SeriesError("integrate_theta: nonzero constant term")
                out.append(_ZERO)
            else:
                out.append(c / k)
        return LaurentSeries(self.var, self.valuation, out, self.order)

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """f(inner) for inner with positive valuation.

        For a Laurent f the inner series must have valuation exactly 1.
        Output order = min(order_f * val_g, order_g)."""
        _check_var(self, inner)
        vg = inner.valuation
        if vg < 1:
            raise SeriesError("compose: inner series must vanish at 0")
        if self.valuation < 0 and vg != 1:
            raise SeriesError("compose: Laurent outer needs inner of valuation 1")
        if self.valuation >= 0:
            order = min(self.order * vg, inner.order) if self.order > 0 else inner.order
            return self._compose_regular(inner, order)
        # f = var^v * g_reg ; f(inner) = inner^v * g_reg(inner)
        v = self.valuation
        reg = LaurentSeries(self.var, 0, list(self.coeffs), self.order - v)
        comp = reg._compose_regular(inner, min(reg.order * vg, inner.order))
        return comp.mul(inner.pow(v))

    def _compose_regular(self, inner: "LaurentSeries", order: int) -> "LaurentSeries":
        out = LaurentSeries.zero(self.var, order)
        if self.is_zero():
            return out
        # Horner from the top stored coefficient down to the valuation
        top = len(self.coeffs) - 1
        acc = LaurentSeries.monomial(self.var, self.coeffs[top], 0, order)
        for i in range(top - 1, -1, -1):
            acc = acc.mul(inner)
            # mul against inner repeatedly narrows the window below `order`
            # only through inner.order, which the caller already accounted for
            c = self.coeffs[i]
            acc = acc.add(LaurentSeries.monomial(self.var, c, 0, order)) \
                if c else acc.add(LaurentSeries.zero(self.var, order))
        if self.valuation > 0:
            acc = acc.mul(inner.pow(self.valuation))
        return acc

    def reverse(self) -> "LaurentSeries":
        """Compositional inverse via Lagrange inversion.

        Needs valuation exactly 1 and an invertible linear coefficient;
        r_m = [var^(m-1)] (var/f)^m / m, so compose(f, reverse(f)) = var."""
        if self.valuation != 1:
            raise SeriesError("reverse: series must be c*var + O(var^2), c != 0")
        n = self.order
        unit = LaurentSeries(self.var, 0, list(self.coeffs), n - 1)  # f / var
        iu = unit.invert()
        out = [_ZERO] * (n - 1)
        p = LaurentSeries.monomial(self.var, 1, 0, n - 1)
        for m in range(1, n):
            p = p.mul(iu)
            if m - 1 < p.order:
                out[m - 1] = p.coeff(m - 1) / m
        return LaurentSeries(self.var, 1, out[: n - 1], n)

    def exp(self) -> "LaurentSeries":
        """exp(f) for f with positive valuation; e_k = (1/k) sum j f_j e_{k-j}."""
        if not self.is_zero() and self.valuation < 1:
            raise SeriesError("exp: series must vanish at 0")
        n = self.order
        f = [self.coeff(k) if k < self.order else _ZERO for k in range(n)]
        e = [_ZERO] * n
        if n > 0:
            e[0] = _ONE
        for k in range(1, n):
            s = _ZERO
            for j in range(1, k + 1):
                fj = f[j]
                if fj:
                    s += j * fj * e[k - j]
            e[k] = s / k
        return LaurentSeries(self.var, 0, e, n)

    def log(self) -> "LaurentSeries":
        """log(f) for f with constant term 1; l' = f'/f coefficientwise."""
        if self.valuation != 0 or not self.coeffs or self.coeffs[0] != 1:
            raise SeriesError("log: series must have constant term 1")
        n = self.order
        f = [self.coeff(k) for k in range(n)]
        l = [_ZERO] * n
        for k in range(1, n):
            s = _ZERO
            for j in range(1, k):
                lj = l[j]
                if lj and f[k - j]:
                    s += j * lj * f[k - j]
            l[k] = f[k] - s / k
        return LaurentSeries(self.var, 0, l, n)

    # --------------------------------------------------------- serialization

    def to_record(self) -> dict:
        return {
            "var": self.var,
            "valuation": self.valuation,
            "order": self.order,
            "coeffs": [rat_to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "LaurentSeries":
        return cls(rec["var"], rec["valuation"],
                   [parse_rat(s) for s in rec["coeffs"]], rec["order"])


class TruncatedSeries(LaurentSeries):
    """Power-series view: coefficients of var^0 .. var^(order-1).

    Embeds into LaurentSeries as the valuation >= 0 case; arithmetic is
    inherited and returns LaurentSeries.
    """

    def __init__(self, var: str, coeffs: Iterable[RationalLike],
                 order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs)
        super().__init__(var, 0, cs, order)

    @classmethod
    def from_laurent(cls, f: LaurentSeries) -> "TruncatedSeries":
        if f.valuation < 0:
            raise SeriesError("negative valuation cannot embed in TruncatedSeries")
        return cls(f.var, [f.coeff(k) for k in range(0, f.order)], f.order)

    def coeff(self, k: int) -> Rational:
        if k < 0:
            raise WindowError("negative exponent on a TruncatedSeries")
        return super().coeff(k)
