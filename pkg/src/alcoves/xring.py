"""Exact coefficient arithmetic, the X-monomial algebra, and its operators.

Coefficients live in Q(q, v) with t = v^2, kept as reduced fractions of
integer polynomials (sympy does the gcd work).  X-polynomials are finite maps
from lattice weights to coefficients; the delta coordinate of an exponent is
*never* folded into q implicitly — the two contradictory conventions in play
are exposed as named maps:

* ``daha_q``  -- q = X^delta   (operator side): X^{mu + k delta} -> q^k X^mu,
* ``char_q``  -- q = X^{-delta} (character side): X^{mu + k delta} -> q^{-k} X^mu,

the latter returning a delta-windowed formal series.  Formal q-series use a
symmetric window [-D, D] with truncating convolution; the doubly infinite
all-ones series 0_q is, inside a window, simply the all-ones coefficient
vector, and products involving it are understood window-relative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .rootdata import (
    AffineCartanData,
    CorootVec,
    Weight,
    pair,
    simple_coroot,
    simple_root,
)
from .weyl import AffineWeyl

Q = sp.Symbol("q")
V = sp.Symbol("v")  # t = v**2

__all__ = [
    "CoeffRF",
    "XPoly",
    "FormalSeries",
    "xpoly_mul",
    "daha_q",
    "char_q",
    "fold_delta",
    "demazure_D",
    "demazure_Delta",
    "ti_action",
    "y_action",
    "zero_q",
    "gchar_RG",
    "geometric",
    "series_from_xpoly",
    "coeff_to_json",
    "xpoly_to_json",
]


class CoeffRF:
    """A reduced rational function in (q, v) with exact integer coefficients."""

    __slots__ = ("expr",)

    def __init__(self, expr):
        if isinstance(expr, CoeffRF):
            self.expr = expr.expr
            return
        if isinstance(expr, Fraction):
            expr = sp.Rational(expr.numerator, expr.denominator)
        self.expr = sp.cancel(sp.sympify(expr))

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "CoeffRF":
        return CoeffRF(0)

    @staticmethod
    def one() -> "CoeffRF":
        return CoeffRF(1)

    @staticmethod
    def q_pow(a: int) -> "CoeffRF":
        return CoeffRF(Q ** int(a))

    @staticmethod
    def t_pow(b: int) -> "CoeffRF":
        return CoeffRF(V ** (2 * int(b)))

    @staticmethod
    def t_half_pow(b: int) -> "CoeffRF":
        """t^{b/2} = v^b."""
        return CoeffRF(V ** int(b))

    @staticmethod
    def monomial(a: int, b: int) -> "CoeffRF":
        """q^a v^b."""
        return CoeffRF(Q ** int(a) * V ** int(b))

    # -- ring structure ------------------------------------------------------

    def _lift(self, other) -> "CoeffRF":
        return other if isinstance(other, CoeffRF) else CoeffRF(other)

    def __add__(self, other):
        return CoeffRF(self.expr + self._lift(other).expr)

    __radd__ = __add__

    def __sub__(self, other):
        return CoeffRF(self.expr - self._lift(other).expr)

    def __rsub__(self, other):
        return CoeffRF(self._lift(other).expr - self.expr)

    def __neg__(self):
        return CoeffRF(-self.expr)

    def __mul__(self, other):
        return CoeffRF(self.expr * self._lift(other).expr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return CoeffRF(self.expr / self._lift(other).expr)

    def __pow__(self, n: int):
        return CoeffRF(self.expr ** int(n))

    def __eq__(self, other):
        if not isinstance(other, (CoeffRF, int, Fraction)):
            return NotImplemented
        return sp.cancel(self.expr - self._lift(other).expr) == 0

    __hash__ = None  # equality is semantic; these are not dict keys

    def __bool__(self):
        return self.expr != 0

    def is_zero(self) -> bool:
        return self.expr == 0

    def __repr__(self):
        return f"CoeffRF({self.expr})"

    # -- inspection ----------------------------------------------------------

    def as_monomial(self):
        """(c, a, b) with expr = c q^a v^b for rational c, or None."""
        num, den = sp.fraction(self.expr)
        out = [sp.Rational(1), 0, 0]
        for part, sign in ((num, 1), (den, -1)):
            for fac in sp.Mul.make_args(part):
                base, exp = fac.as_base_exp()
                if base == Q and exp.is_Integer:
                    out[1] += sign * int(exp)
                elif base == V and exp.is_Integer:
                    out[2] += sign * int(exp)
                elif fac.is_Rational:
                    out[0] *= fac if sign == 1 else 1 / fac
                else:
                    return None
        c = out[0]
        return Fraction(int(c.p), int(c.q)), out[1], out[2]

    # -- substitutions and exact limits --------------------------------------

    def subs_q_inverse(self) -> "CoeffRF":
        return CoeffRF(self.expr.subs(Q, 1 / Q))

    def subs_q(self, value) -> "CoeffRF":
        out = sp.cancel(self.expr.subs(Q, sp.sympify(value)))
        if out in (sp.oo, -sp.oo, sp.zoo) or out.has(sp.zoo) or out is sp.nan:
            raise ValueError(f"pole at q={value} in {self.expr}")
        return CoeffRF(out)

    def limit(self, var: str, to) -> "CoeffRF":
        """Exact limit as q or t goes to 0 or oo; t limits go through v."""
        sym = Q if var == "q" else V
        target = sp.oo if to in (sp.oo, "oo", "inf") else sp.Integer(0)
        out = sp.limit(self.expr, sym, target)
        if out in (sp.oo, -sp.oo, sp.zoo) or out.has(sp.oo) or out is sp.nan:
            raise ValueError(f"divergent limit {var}->{to} of {self.expr}")
        return CoeffRF(sp.cancel(out))


# ---------------------------------------------------------------------------
# X-polynomials


@dataclass
class XPoly:
    """Finite linear combination of X^mu with CoeffRF coefficients."""

    terms: dict[Weight, CoeffRF] = field(default_factory=dict)

    @staticmethod
    def monomial(mu: Weight, coeff=1) -> "XPoly":
        c = CoeffRF(coeff)
        return XPoly({} if c.is_zero() else {mu: c})

    @staticmethod
    def scalar(rank: int, coeff=1) -> "XPoly":
        return XPoly.monomial(Weight(Fraction(0), (0,) * rank, 0), coeff)

    def copy(self) -> "XPoly":
        return XPoly(dict(self.terms))

    def add_term(self, mu: Weight, coeff) -> None:
        c = self.terms.get(mu, CoeffRF.zero()) + coeff
        if c.is_zero():
            self.terms.pop(mu, None)
        else:
            self.terms[mu] = c

    def __add__(self, other: "XPoly") -> "XPoly":
        out = self.copy()
        for mu, c in other.terms.items():
            out.add_term(mu, c)
        return out

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __neg__(self) -> "XPoly":
        return XPoly({mu: -c for mu, c in self.terms.items()})

    def scale(self, coeff) -> "XPoly":
        c0 = CoeffRF(coeff)
        if c0.is_zero():
            return XPoly()
        return XPoly({mu: c * c0 for mu, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = CoeffRF.zero()
        return all(
            self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def coeff(self, mu: Weight) -> CoeffRF:
        return self.terms.get(mu, CoeffRF.zero())

    def map_coeffs(self, fn) -> "XPoly":
        out = XPoly()
        for mu, c in self.terms.items():
            out.add_term(mu, fn(c))
        return out

    def __repr__(self):
        if not self.terms:
            return "XPoly(0)"
        bits = []
        for mu, c in sorted(self.terms.items(),
                            key=lambda kv: (kv[0].delta, kv[0].omega, kv[0].level)):
            bits.append(f"({c.expr})*X^{{d={mu.delta},w={mu.omega},L={mu.level}}}")
        return "XPoly(" + " + ".join(bits) + ")"


def xpoly_mul(f: XPoly, g: XPoly) -> XPoly:
    out = XPoly()
    for mu, c in f.terms.items():
        for nu, d in g.terms.items():
            out.add_term(mu + nu, c * d)
    return out


def fold_delta(f: XPoly, sign: int) -> XPoly:
    """Fold X^{mu + k delta} into q^{sign*k} X^mu (k must be an integer)."""
    out = XPoly()
    for mu, c in f.terms.items():
        if mu.delta.denominator != 1:
            raise ValueError(f"non-integral delta exponent {mu.delta}")
        k = int(mu.delta)
        bare = Weight(Fraction(0), mu.omega, mu.level)
        out.add_term(bare, c * CoeffRF.q_pow(sign * k))
    return out


def daha_q(f: XPoly) -> XPoly:
    """Operator-side folding q = X^delta."""
    return fold_delta(f, +1)


def char_q(f: XPoly, window: int | None = None) -> "FormalSeries":
    """Character-side folding q = X^{-delta}, as a formal q-series.

    With no window given the window is sized to the content and the series
    is exact (not truncated).
    """
    folded: dict[int, XPoly] = {}
    for mu, c in f.terms.items():
        if mu.delta.denominator != 1:
            raise ValueError(f"non-integral delta exponent {mu.delta}")
        k = -int(mu.delta)
        bare = Weight(Fraction(0), mu.omega, mu.level)
        folded.setdefault(k, XPoly()).add_term(bare, c)
    if window is None:
        window = max((abs(k) for k in folded), default=0)
        truncated = False
    else:
        truncated = any(abs(k) > window for k in folded)
        folded = {k: p for k, p in folded.items() if abs(k) <= window}
    return FormalSeries(window, folded, truncated)


# ---------------------------------------------------------------------------
# windowed formal q-series


@dataclass
class FormalSeries:
    """Map q-exponent in [-window, window] -> delta-free XPoly."""

    window: int
    terms: dict[int, XPoly] = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self):
        self.terms = {k: p for k, p in self.terms.items() if not p.is_zero()}

    @staticmethod
    def one(rank: int, window: int) -> "FormalSeries":
        return FormalSeries(window, {0: XPoly.scalar(rank)})

    def coeff(self, k: int) -> XPoly:
        return self.terms.get(k, XPoly())

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        window = min(self.window, other.window)
        out: dict[int, XPoly] = {}
        for k in range(-window, window + 1):
            c = self.coeff(k) + other.coeff(k)
            if not c.is_zero():
                out[k] = c
        return FormalSeries(window, out, self.truncated or other.truncated)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        window = min(self.window, other.window)
        out: dict[int, XPoly] = {}
        overflow = False
        for a, f in self.terms.items():
            for b, g in other.terms.items():
                k = a + b
                if abs(k) > window:
                    overflow = True
                    continue
                prod = xpoly_mul(f, g)
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return FormalSeries(
            window, out, self.truncated or other.truncated or overflow
        )

    def scale_xpoly(self, f: XPoly) -> "FormalSeries":
        return FormalSeries(
            self.window,
            {k: xpoly_mul(p, f) for k, p in self.terms.items()},
            self.truncated,
        )

    def restrict(self, window: int) -> "FormalSeries":
        if window > self.window:
            raise ValueError("cannot grow a window by restriction")
        dropped = any(abs(k) > window for k in self.terms)
        return FormalSeries(
            window,
            {k: p for k, p in self.terms.items() if abs(k) <= window},
            self.truncated or dropped,
        )

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        if self.window != other.window:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    __hash__ = None

    def __repr__(self):
        keys = sorted(self.terms)
        flag = ", truncated" if self.truncated else ""
        body = "; ".join(f"q^{k}: {self.terms[k]!r}" for k in keys)
        return f"FormalSeries(window={self.window}{flag}; {body})"


def _laurent_q(c: CoeffRF) -> dict[int, sp.Rational]:
    """Exponent -> coefficient for a coefficient that is Laurent in q, t-free."""
    expr = sp.cancel(c.expr)
    if expr.has(V):
        raise ValueError(f"coefficient {expr} involves t")
    num, den = sp.fraction(expr)
    dpoly = sp.Poly(den, Q)
    if len(dpoly.terms()) != 1:
        raise ValueError(f"coefficient {expr} is not a Laurent polynomial in q")
    (dexp,), dcoef = dpoly.terms()[0]
    out = {}
    for (a,), coef in sp.Poly(num, Q).terms():
        out[int(a) - int(dexp)] = sp.Rational(coef, dcoef)
    return out


def series_from_xpoly(f: XPoly, window: int | None = None) -> FormalSeries:
    """Regrade an XPoly with q-Laurent coefficients as a formal q-series.

    Weights must already be delta-free (fold first); the q-powers in the
    coefficients become the series grading.
    """
    grades: dict[int, XPoly] = {}
    for mu, c in f.terms.items():
        if mu.delta != 0:
            raise ValueError("fold the delta exponents before regrading")
        for a, coef in _laurent_q(c).items():
            grades.setdefault(a, XPoly()).add_term(
                mu, CoeffRF(coef)
            )
    grades = {a: p for a, p in grades.items() if not p.is_zero()}
    if window is None:
        window = max((abs(a) for a in grades), default=0)
        truncated = False
    else:
        truncated = any(abs(a) > window for a in grades)
        grades = {a: p for a, p in grades.items() if abs(a) <= window}
    return FormalSeries(window, grades, truncated)


def zero_q(window: int, step: int = 1, rank: int = 1) -> FormalSeries:
    """The doubly infinite series sum_k q^{step*k}, truncated to the window."""
    if step < 1:
        raise ValueError("step must be >= 1")
    terms = {k: XPoly.scalar(rank)
             for k in range(-window, window + 1) if k % step == 0}
    return FormalSeries(window, terms, truncated=True)


def geometric(k: int, window: int, rank: int = 1, direction: int = 1) -> FormalSeries:
    """1/(1 - q^{direction*k}) = sum_{j>=0} q^{direction*j*k} on the window."""
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = {}
    j = 0
    while j * k <= window:
        terms[direction * j * k] = XPoly.scalar(rank)
        j += 1
    return FormalSeries(window, terms, truncated=True)


def gchar_RG(m_vector, window: int, collapse: bool = True,
             plus: bool = False, direction: int = 1) -> FormalSeries:
    """Graded character of the loop-symmetric-function algebra attached to
    lambda = sum m_i omega_i.

    Plain form: prod_i 0_{q^{m_i}} prod_{k=1}^{m_i-1} 1/(1-q^k); with
    ``collapse`` each 0_{q^{m_i}} is replaced by 0_q, the normal form under
    which all the printed character displays come out.  ``plus`` gives the
    polynomial-subalgebra grading prod_i prod_{k=1}^{m_i} 1/(1-q^k), with
    ``direction=-1`` expanding each factor in q^{-1} instead (the grading
    used by bounded characters).
    """
    rank = len(m_vector)
    out = FormalSeries.one(rank, window)
    for m in m_vector:
        if m < 0:
            raise ValueError("multiplicities must be >= 0")
        if m == 0:
            continue
        if plus:
            for k in range(1, m + 1):
                out = out * geometric(k, window, rank, direction)
        else:
            out = out * zero_q(window, 1 if collapse else m, rank)
            for k in range(1, m):
                out = out * geometric(k, window, rank, direction)
    return out


# ---------------------------------------------------------------------------
# operators on the polynomial representation


def _string(mu: Weight, alpha: Weight, count: int) -> list[Weight]:
    """[mu, mu - alpha, ..., mu - (count-1) alpha]."""
    out = []
    cur = mu
    for _ in range(count):
        out.append(cur)
        cur = cur - alpha
    return out


def demazure_D(data: AffineCartanData, i: int, f: XPoly) -> XPoly:
    """D_i f = (f - X^{-alpha_i} s_i f)/(1 - X^{-alpha_i}), termwise."""
    alpha = simple_root(data, i)
    avee = simple_coroot(data, i)
    out = XPoly()
    for mu, c in f.terms.items():
        m = pair(mu, avee)
        if m >= 0:
            for nu in _string(mu, alpha, m + 1):
                out.add_term(nu, c)
        elif m <= -2:
            for nu in _string(mu + alpha, -alpha, -m - 1):
                out.add_term(nu, -c)
        # m == -1: the term dies
    return out


def demazure_Delta(data: AffineCartanData, i: int, f: XPoly) -> XPoly:
    """Delta_i f = (f - s_i f)/(1 - X^{-alpha_i}), termwise."""
    alpha = simple_root(data, i)
    avee = simple_coroot(data, i)
    out = XPoly()
    for mu, c in f.terms.items():
        m = pair(mu, avee)
        if m > 0:
            for nu in _string(mu, alpha, m):
                out.add_term(nu, c)
        elif m < 0:
            for nu in _string(mu + alpha, -alpha, -m):
                out.add_term(nu, -c)
    return out


def reflect_xpoly(data: AffineCartanData, i: int, f: XPoly) -> XPoly:
    from .rootdata import reflect
    out = XPoly()
    for mu, c in f.terms.items():
        out.add_term(reflect(data, i, mu), c)
    return out


def ti_action(data: AffineCartanData, i: int, f: XPoly, sign: int = 1) -> XPoly:
    """T_i^{sign} acting on f * 1 in the polynomial representation."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    alpha = simple_root(data, i)
    avee = simple_coroot(data, i)
    thalf = CoeffRF.t_half_pow(1)
    tdiff = CoeffRF.t_half_pow(1) - CoeffRF.t_half_pow(-1)
    out = XPoly()
    for mu, c in f.terms.items():
        m = pair(mu, avee)
        smu = mu - alpha.scale(m)
        out.add_term(smu, c * thalf)
        if m > 0:
            # (X^mu - X^{s_i mu})/(1 - X^{alpha_i}) = -(X^{s_i mu} + ... + X^{mu - alpha})
            for nu in _string(mu - alpha, alpha, m):
                out.add_term(nu, -c * tdiff)
        elif m < 0:
            for nu in _string(mu, -alpha, -m):
                out.add_term(nu, c * tdiff)
    if sign == -1:
        # T_i^{-1} = T_i - (t^{1/2} - t^{-1/2})
        out = out + f.scale(-tdiff)
    return out


def y_action(W: AffineWeyl, lam_vee: CorootVec, f: XPoly) -> XPoly:
    """Y^{lam_vee} acting on f * 1; the K component acts by q^{-1}.

    The translation part expands as T_{i_1}^{e_1} ... T_{i_l}^{e_l} along a
    reduced word of t_{lam_vee}, with e_k = +1 exactly when the k-th prefix
    step climbs in the level-zero order.  This is the sign choice under which
    the nonsymmetric Macdonald basis diagonalizes every Y (checked directly by
    the eigenvector tests); the opposite choice also gives monomials on the
    vacuum, so vacuum eigenvalues alone cannot calibrate it.

    The result is returned in folded normal form: delta components produced by
    the T_0 steps are converted to powers of q, so weights keep delta = 0.
    """
    data = W.data
    out = f
    if any(lam_vee.k):
        t = W.translation_coroot(CorootVec(lam_vee.k, 0))
        cls, word = W.reduced_word(t)
        if cls != 0:
            raise ValueError("coroot-lattice translation left the affine group")
        ops = []
        p = W.one()
        for j in word:
            up = W.goes_up("0", p, j)
            ops.append((j, 1 if up else -1))
            p = W.mul(p, W.simple(j))
        for j, eps in reversed(ops):
            out = ti_action(data, j, out, eps)
        out = daha_q(out)
    if lam_vee.kK:
        out = out.scale(CoeffRF.q_pow(-lam_vee.kK))
    return out


# ---------------------------------------------------------------------------
# serialization


def coeff_to_json(c: CoeffRF) -> dict:
    num, den = sp.fraction(c.expr)

    def poly_map(p):
        poly = sp.Poly(sp.expand(p), Q, V)
        out = {}
        for (a, b), coef in poly.terms():
            out[f"q^{a} v^{b}"] = int(coef)
        return dict(sorted(out.items()))

    return {"num": poly_map(num), "den": poly_map(den)}


def xpoly_to_json(f: XPoly) -> list[dict]:
    entries = []
    for mu, c in sorted(f.terms.items(),
                        key=lambda kv: (kv[0].delta, kv[0].omega, kv[0].level)):
        entry = {
            "delta": str(mu.delta),
            "omega": list(mu.omega),
            "level": mu.level,
        }
        entry.update(coeff_to_json(c))
        entries.append(entry)
    return entries
