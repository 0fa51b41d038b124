"""Alcove-walk enumeration and fold bookkeeping.

A walk of type (c, word) starts at the length-zero representative g_c and
reads the word left to right; each letter is either crossed or folded.  The
sign of a step compares the two candidate alcoves in the level-zero order:
when z s_j sits above z, crossing is positive and folding is negative
(the walk stays at the lesser alcove), and conversely below.

The exponent data (sh, ht) attached to position k of a reduced word is
*extracted* from the eigenvalue of Y^{beta_k^vee} on the vacuum vector rather
than computed from a sign rule; this makes the downstream walk formula immune
to orientation conventions (a miscalibration shows up here as a non-monomial
eigenvalue, not as silently wrong output).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    AffineCartanData,
    CorootVec,
    Weight,
    pair,
    simple_coroot,
    simple_root,
)
from .weyl import AffineWeyl, WeylElt
from .xring import XPoly, y_action

POS_CROSS = "pos_cross"
NEG_CROSS = "neg_cross"
POS_FOLD = "pos_fold"
NEG_FOLD = "neg_fold"
STEP_KINDS = (POS_CROSS, NEG_CROSS, POS_FOLD, NEG_FOLD)

__all__ = [
    "BetaData",
    "WalkStep",
    "AlcoveWalk",
    "WalkClass",
    "beta_sequence",
    "enumerate_walks",
    "classify",
    "walk_to_json",
    "POS_CROSS",
    "NEG_CROSS",
    "POS_FOLD",
    "NEG_FOLD",
]


@dataclass(frozen=True)
class BetaData:
    """beta_k^vee = s_{i_l} ... s_{i_{k+1}} alpha_{i_k}^vee with its exponents.

    Pinned by the oracle Y^{beta^vee} 1 = q^{-sh} t^{-ht} 1.
    """

    beta_vee: CorootVec
    sh: int
    ht: int


@dataclass(frozen=True)
class WalkStep:
    index: int
    kind: str


@dataclass(frozen=True)
class AlcoveWalk:
    word: tuple[int, ...]
    omega_prefix: int
    steps: tuple[WalkStep, ...]
    end: WeylElt
    wt: Weight
    phi: WeylElt
    f_plus: tuple[int, ...]   # 1-based positions of positive folds
    f_minus: tuple[int, ...]

    @property
    def folds(self) -> tuple[int, ...]:
        return tuple(sorted(self.f_plus + self.f_minus))

    @property
    def is_unfolded(self) -> bool:
        return not (self.f_plus or self.f_minus)


@dataclass(frozen=True)
class WalkClass:
    pos_folded: bool
    neg_folded: bool
    pos_semi_infinite: bool
    neg_semi_infinite: bool


def _reflect_coroot(data: AffineCartanData, i: int, h: CorootVec) -> CorootVec:
    """s_i(h) = h - <alpha_i, h> alpha_i^vee on the coweight side."""
    m = pair(simple_root(data, i), h)
    a = simple_coroot(data, i)
    return CorootVec(
        tuple(x - m * y for x, y in zip(h.k, a.k)),
        h.kK - m * a.kK,
    )


def beta_sequence(W: AffineWeyl, word) -> list[BetaData]:
    """Coroots and (sh, ht) exponents attached to the positions of a reduced word."""
    word = tuple(word)
    if W.length_plus(W.from_word(word)) != len(word):
        raise ValueError(f"word {word} is not reduced")
    data = W.data
    one = XPoly.scalar(data.rank)
    out = []
    for k, letter in enumerate(word):
        beta = simple_coroot(data, letter)
        for j in word[k + 1:]:
            beta = _reflect_coroot(data, j, beta)
        eig = y_action(W, beta, one)
        bad = ValueError(
            f"Y^{{beta_{k + 1}^vee}} is not a monomial on the vacuum for word "
            f"{word}; the level-zero orientation is misconfigured"
        )
        if len(eig.terms) != 1:
            raise bad
        [(mu, coeff)] = eig.terms.items()
        mono = coeff.as_monomial()
        if not mu.is_zero() or mono is None:
            raise bad
        c, a, b = mono
        if c != 1 or b % 2:
            raise bad
        out.append(BetaData(beta, sh=-a, ht=-(b // 2)))
    return out


def enumerate_walks(W: AffineWeyl, omega_prefix: int, word) -> list[AlcoveWalk]:
    """All 2^l fold patterns for the given type, in binary-counter order.

    Pattern b folds the steps whose bits are set in b (bit k = step k+1), so
    walk 0 is the unfolded one.
    """
    word = tuple(word)
    bound = W.config.walk_length_bound
    if len(word) > bound:
        raise ValueError(f"word length {len(word)} exceeds bound {bound}")
    if W.length_plus(W.from_word(word)) != len(word):
        raise ValueError(f"word {word} is not reduced")
    rank = W.data.rank
    start = W.omega_rep(omega_prefix)
    walks = []
    for pattern in range(1 << len(word)):
        z = start
        steps = []
        f_plus, f_minus = [], []
        for k, i in enumerate(word):
            up = W.goes_up("0", z, i)
            folded = (pattern >> k) & 1
            if folded:
                kind = NEG_FOLD if up else POS_FOLD
                (f_minus if up else f_plus).append(k + 1)
            else:
                kind = POS_CROSS if up else NEG_CROSS
                z = W.mul(z, W.simple(i))
            steps.append(WalkStep(i, kind))
        wt = Weight(Fraction(0), tuple(z.trans), 0)
        phi = WeylElt((0,) * rank, z.fin)
        walks.append(
            AlcoveWalk(
                word=word,
                omega_prefix=omega_prefix,
                steps=tuple(steps),
                end=z,
                wt=wt,
                phi=phi,
                f_plus=tuple(f_plus),
                f_minus=tuple(f_minus),
            )
        )
    return walks


def classify(W: AffineWeyl, walk: AlcoveWalk, betas, len_m_fin: int) -> WalkClass:
    """The four restricted walk classes.

    Folded flags are fold-set emptiness.  The semi-infinite flags are the
    integer identities that cut out the walks surviving the t -> 0 and
    t -> oo limits; here l(m) is the length of the finite factor m in
    m_mu = t_mu m and l(phi) that of the final direction.
    """
    len_phi = W.length_plus(walk.phi)
    nfolds = len(walk.f_plus) + len(walk.f_minus)
    ht_plus = sum(betas[k - 1].ht for k in walk.f_plus)
    ht_minus = sum(betas[k - 1].ht for k in walk.f_minus)
    return WalkClass(
        pos_folded=not walk.f_minus,
        neg_folded=not walk.f_plus,
        pos_semi_infinite=(len_m_fin - len_phi - nfolds + 2 * ht_plus == 0),
        neg_semi_infinite=(len_phi - len_m_fin - nfolds + 2 * ht_minus == 0),
    )


def walk_to_json(walk: AlcoveWalk) -> dict:
    return {
        "word": list(walk.word),
        "omega_prefix": walk.omega_prefix,
        "steps": [{"i": s.index, "kind": s.kind} for s in walk.steps],
        "wt": list(walk.wt.omega),
        "f_plus": list(walk.f_plus),
        "f_minus": list(walk.f_minus),
    }
