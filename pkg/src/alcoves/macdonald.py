"""Nonsymmetric Macdonald polynomials and level-zero/Demazure characters.

The primary engine is the alcove-walk sum: E_mu is a sum over all fold
patterns of the reduced word of the minimal coset representative m_mu, with
rational fold factors in (q, t).  The four boundary specializations are
always computed twice — once by the restricted combinatorial sum over the
matching walk class, once by exact limits of the full rational coefficients —
and cross-checked; a mismatch raises instead of returning.

The t = 0 column has a third, independent route through Demazure operators
at positive level (straightening mu + Lambda_0 to a dominant weight and
applying one D per straightening step), which is what ties these polynomials
to affine Demazure characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    Weight,
    pair,
    reflect,
    simple_coroot,
    weight,
)
from .weyl import AffineWeyl, WeylElt
from .walks import AlcoveWalk, beta_sequence, classify, enumerate_walks
from .xring import (
    CoeffRF,
    FormalSeries,
    XPoly,
    char_q,
    daha_q,
    demazure_D,
    gchar_RG,
    series_from_xpoly,
    xpoly_mul,
)

SPECIALIZATIONS = ("q0", "qinf", "t0", "tinf")

__all__ = [
    "MuIndex",
    "SPECIALIZATIONS",
    "SpecializationMismatch",
    "mu_index",
    "E",
    "E_tilde",
    "specialize",
    "ion_demazure",
    "demazure_char",
    "extremal_char",
    "bounded_char",
]


class SpecializationMismatch(RuntimeError):
    """The walk-class sum and the exact-limit route disagreed."""


@dataclass(frozen=True)
class MuIndex:
    """mu together with the normal form t_mu = m_mu * m_fin.

    m_mu is the minimal-length element of the coset t_mu W_fin, presented as
    a length-zero class plus a reduced word.
    """

    mu: Weight
    m_mu: WeylElt
    omega_class: int
    m_word: tuple[int, ...]
    m_fin: WeylElt


def _cache(W: AffineWeyl) -> dict:
    return W.__dict__.setdefault("_macdonald_cache", {})


def mu_index(W: AffineWeyl, mu_omega) -> MuIndex:
    mu_omega = tuple(int(x) for x in mu_omega)
    key = ("idx", mu_omega)
    cache = _cache(W)
    if key not in cache:
        m, u = W.min_coset_rep(mu_omega)
        cls, word = W.reduced_word(m)
        mu = weight(W.data, Fraction(0), mu_omega, 0)
        assert W.mul(m, u) == W.translation(mu_omega)
        cache[key] = MuIndex(mu, m, cls, word, u)
    return cache[key]


def _fold_factor(beta, negative: bool) -> CoeffRF:
    if beta.sh == 0 and beta.ht == 0:
        raise RuntimeError(
            "vanishing fold denominator: the underlying word is not reduced"
        )
    t = CoeffRF.t_pow(1)
    mono = CoeffRF.q_pow(beta.sh) * CoeffRF.t_pow(beta.ht)
    base = CoeffRF.t_half_pow(-1) * (CoeffRF.one() - t) / (CoeffRF.one() - mono)
    return base * mono if negative else base


def E(W: AffineWeyl, mu_omega) -> XPoly:
    """The walk sum, normalized so the coefficient of the full crossing is
    t^{l(phi)/2} (the raw, unnormalized polynomial)."""
    key = ("E", tuple(int(x) for x in mu_omega))
    cache = _cache(W)
    if key in cache:
        return cache[key]
    idx = mu_index(W, mu_omega)
    betas = beta_sequence(W, idx.m_word)
    total = XPoly()
    for walk in enumerate_walks(W, idx.omega_class, idx.m_word):
        c = CoeffRF.t_half_pow(W.length_plus(walk.phi))
        for k in walk.f_plus:
            c = c * _fold_factor(betas[k - 1], negative=False)
        for k in walk.f_minus:
            c = c * _fold_factor(betas[k - 1], negative=True)
        total.add_term(walk.wt, c)
    cache[key] = total
    return total


def E_tilde(W: AffineWeyl, mu_omega) -> XPoly:
    """Normalized walk sum: coefficient of X^mu is exactly 1."""
    key = ("Et", tuple(int(x) for x in mu_omega))
    cache = _cache(W)
    if key in cache:
        return cache[key]
    idx = mu_index(W, mu_omega)
    out = E(W, mu_omega).scale(
        CoeffRF.t_half_pow(-W.length_plus(idx.m_fin))
    )
    top = out.coeff(idx.mu)
    if not top == CoeffRF.one():
        raise RuntimeError(
            f"normalization failed: coefficient of X^mu is {top.expr}"
        )
    cache[key] = out
    return out


def _class_sum(W: AffineWeyl, idx: MuIndex, which: str) -> XPoly:
    betas = beta_sequence(W, idx.m_word)
    len_m = W.length_plus(idx.m_fin)
    out = XPoly()
    for walk in enumerate_walks(W, idx.omega_class, idx.m_word):
        flags = classify(W, walk, betas, len_m)
        nf = len(walk.f_plus) + len(walk.f_minus)
        len_phi = W.length_plus(walk.phi)
        if which == "q0":
            if not flags.pos_folded:
                continue
            c = CoeffRF.t_half_pow(len_phi - len_m - nf) * (
                CoeffRF.one() - CoeffRF.t_pow(1)
            ) ** nf
        elif which == "qinf":
            if not flags.neg_folded:
                continue
            c = CoeffRF.t_half_pow(len_phi - len_m + nf) * (
                CoeffRF.one() - CoeffRF.t_pow(-1)
            ) ** nf
        elif which == "t0":
            if not flags.neg_semi_infinite:
                continue
            c = CoeffRF.q_pow(sum(betas[k - 1].sh for k in walk.f_minus))
        elif which == "tinf":
            if not flags.pos_semi_infinite:
                continue
            c = CoeffRF.q_pow(-sum(betas[k - 1].sh for k in walk.f_plus))
        else:
            raise ValueError(f"unknown specialization {which!r}")
        out.add_term(walk.wt, c)
    return out


_LIMITS = {"q0": ("q", 0), "qinf": ("q", "oo"), "t0": ("t", 0), "tinf": ("t", "oo")}


def specialize(W: AffineWeyl, mu_omega, which: str) -> XPoly:
    """One of the four boundary specializations of E_tilde, cross-checked."""
    if which not in SPECIALIZATIONS:
        raise ValueError(f"unknown specialization {which!r}")
    key = ("spec", tuple(int(x) for x in mu_omega), which)
    cache = _cache(W)
    if key in cache:
        return cache[key]
    idx = mu_index(W, mu_omega)
    by_class = _class_sum(W, idx, which)
    var, to = _LIMITS[which]
    by_limit = E_tilde(W, mu_omega).map_coeffs(lambda c: c.limit(var, to))
    if not by_class == by_limit:
        diff = by_class - by_limit
        raise SpecializationMismatch(
            f"walk-class sum and exact limit disagree for mu={mu_omega}, "
            f"{which}:\n  class sum: {by_class!r}\n  limit:     {by_limit!r}\n"
            f"  difference: {diff!r}"
        )
    cache[key] = by_class
    return by_class


def ion_demazure(W: AffineWeyl, mu_omega) -> XPoly:
    """t = 0 route through Demazure operators at level one.

    Straighten mu + Lambda_0 to a dominant weight nu + Lambda_0 + j delta,
    recording one letter per reflection; then apply the matching D operators
    to X^{nu + Lambda_0}, last letter first, and shift the result back to
    level zero.
    """
    data = W.data
    mu_omega = tuple(int(x) for x in mu_omega)
    x = weight(data, Fraction(0), mu_omega, 1)
    letters = []
    guard = 0
    while True:
        neg = [
            i for i in data.nodes() if pair(x, simple_coroot(data, i)) < 0
        ]
        if not neg:
            break
        i = neg[0]
        x = reflect(data, i, x)
        letters.append(i)
        guard += 1
        if guard > 10_000:
            raise RuntimeError("dominance loop failed to terminate")
    if x.delta.denominator != 1:
        raise RuntimeError(f"non-integral delta drift {x.delta}")
    j = int(x.delta)
    f = XPoly.monomial(weight(data, Fraction(0), x.omega, 1))
    for a in reversed(letters):
        f = demazure_D(data, a, f)
    f = daha_q(f)
    f = xpoly_mul(f, XPoly.monomial(weight(data, Fraction(0), (0,) * data.rank, -1)))
    return f.scale(CoeffRF.q_pow(j))


def _require_dominant_positive_level(data, lam: Weight) -> None:
    if lam.level < 1:
        raise ValueError("weight must have positive level")
    for i in data.nodes():
        if pair(lam, simple_coroot(data, i)) < 0:
            raise ValueError(f"weight pairs negatively with node {i}")


def demazure_char(W: AffineWeyl, lam: Weight, word) -> FormalSeries:
    """char of the Demazure module cut out by the given reduced word:
    the last letter of the word acts first, matching the operator string
    D_{i_1} ... D_{i_l} X^lambda read left to right."""
    _require_dominant_positive_level(W.data, lam)
    f = XPoly.monomial(lam)
    for a in reversed(tuple(word)):
        f = demazure_D(W.data, a, f)
    return char_q(f)


def _xpoly_q_inverse(f: XPoly) -> XPoly:
    return f.map_coeffs(lambda c: c.subs_q_inverse())


def _w0_image(W: AffineWeyl, lam_omega) -> tuple[int, ...]:
    w0 = W.finite_elements()[-1]
    lam = weight(W.data, Fraction(0), tuple(lam_omega), 0)
    return W.act(w0, lam).omega


def extremal_char(W: AffineWeyl, lam_omega, window: int,
                  route: str = "t0") -> FormalSeries:
    """Windowed character of the level-zero extremal-weight module:
    gchar of the commuting-loop algebra times E_tilde_{w0 lam}(q^{-1}, 0)
    (or the t -> oo route).

    The gchar factor contains the doubly infinite all-ones series 0_q, which
    absorbs monomial shifts: 0_q q^j = 0_q exactly.  A window truncation
    breaks that invariance, so the q-powers riding on the E-coefficients are
    absorbed first (each coefficient evaluated at q = 1) and only then is the
    product truncated.  This is also what makes the t -> 0 and t -> oo routes
    literally equal, as they differ by per-weight q-shifts only.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if route not in ("t0", "tinf"):
        raise ValueError("route must be 't0' or 'tinf'")
    lam_omega = tuple(int(x) for x in lam_omega)
    if any(m < 0 for m in lam_omega):
        raise ValueError("weight must be dominant (m_i >= 0)")
    e = specialize(W, _w0_image(W, lam_omega), route)
    absorbed = e.map_coeffs(lambda c: c.subs_q(1))
    return gchar_RG(lam_omega, window).scale_xpoly(absorbed)


def bounded_char(W: AffineWeyl, lam_omega, window: int,
                 route: str = "t0") -> FormalSeries:
    """Windowed character of the bounded (one-sided) submodule: the gchar
    factor expands toward q^{-1}, so each graded piece is finite."""
    if window < 1:
        raise ValueError("window must be >= 1")
    lam_omega = tuple(int(x) for x in lam_omega)
    if any(m < 0 for m in lam_omega):
        raise ValueError("weight must be dominant (m_i >= 0)")
    e = specialize(W, _w0_image(W, lam_omega), route)
    series = series_from_xpoly(_xpoly_q_inverse(e), window)
    g = gchar_RG(lam_omega, window, plus=True, direction=-1)
    return g * series
