"""Right Hecke-module actions on three coset bases, with labeled-walk counts.

The T, X and L bases carry the same quadratic relations; they differ only in
which adjacency order decides the easy case: T uses the positive order, X the
level-zero order, L the negative one.  Labeled walks count the same
coefficients over a field with q elements: a forward crossing carries a free
label (q choices), a backward crossing is forced (one choice), a fold picks a
nonzero label (q - 1 choices).  The two computations are tied together by
``crosscheck_X``: the walk count at endpoint v equals the coefficient of the
identity basis element in basis_v acted on by the reversed word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .weyl import AffineWeyl, WeylElt
from .xring import CoeffRF

BASIS_ORDER = {"T": "+", "X": "0", "L": "-"}
COLOR_BASIS = {"blue": "T", "red": "X", "green": "L"}

_Q = CoeffRF.q_pow(1)
_QM1 = CoeffRF.q_pow(1) - CoeffRF.one()


@dataclass
class ModuleElt:
    """Linear combination of coset basis symbols in one fixed basis."""

    basis: str
    terms: dict[WeylElt, CoeffRF]

    def __post_init__(self):
        if self.basis not in BASIS_ORDER:
            raise ValueError(f"unknown basis {self.basis!r}")
        self.terms = {w: c for w, c in self.terms.items() if not c.is_zero()}

    def coeff(self, w: WeylElt) -> CoeffRF:
        return self.terms.get(w, CoeffRF.zero())

    def __eq__(self, other):
        if not isinstance(other, ModuleElt):
            return NotImplemented
        if self.basis != other.basis:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.coeff(w) == other.coeff(w) for w in keys)

    __hash__ = None


def basis_elt(tag: str, w: WeylElt) -> ModuleElt:
    return ModuleElt(tag, {w: CoeffRF.one()})


def _add(out: dict, w: WeylElt, c: CoeffRF) -> None:
    acc = out.get(w, CoeffRF.zero()) + c
    if acc.is_zero():
        out.pop(w, None)
    else:
        out[w] = acc


def _act_step(W: AffineWeyl, tag: str, w: WeylElt, j: int):
    """Expansion of basis_w times the j-th generator, cached per group."""
    cache = W.__dict__.setdefault("_heckemod_step_cache", {})
    key = (tag, w, j)
    hit = cache.get(key)
    if hit is None:
        ws = W.mul(w, W.simple(j))
        if W.goes_up(BASIS_ORDER[tag], w, j):
            hit = ((ws, CoeffRF.one()),)
        else:
            hit = ((ws, _Q), (w, _QM1))
        cache[key] = hit
    return hit


def act(W: AffineWeyl, elt: ModuleElt, j: int) -> ModuleElt:
    """Right action of the j-th generator in the element's basis.

    Up-step: basis_w goes to basis_{w s_j}.  Down-step: the quadratic
    relation contributes q basis_{w s_j} + (q-1) basis_w.
    """
    if j not in W.data.nodes():
        raise ValueError(f"no node {j}")
    out: dict[WeylElt, CoeffRF] = {}
    for w, c in elt.terms.items():
        for tgt, coeff in _act_step(W, elt.basis, w, j):
            _add(out, tgt, c * coeff)
    return ModuleElt(elt.basis, out)


def act_word(W: AffineWeyl, elt: ModuleElt, word) -> ModuleElt:
    for j in word:
        elt = act(W, elt, j)
    return elt


# -- labeled walks -----------------------------------------------------------

@dataclass(frozen=True)
class LabeledWalk:
    """One fold/cross pattern along a reduced word.

    Each step records its kind and label space: forward crossings are labeled
    by the whole field ("k", q choices), backward crossings by zero only
    ("0"), folds by the nonzero scalars ("k*", q - 1 choices).  ``count`` is
    the product of the label-space sizes.
    """

    color: str
    steps: tuple[tuple[str, str], ...]
    endpoint: WeylElt
    count: CoeffRF


def _up(W: AffineWeyl, order: str, w: WeylElt, j: int) -> bool:
    cache = W.__dict__.setdefault("_heckemod_up_cache", {})
    key = (order, w, j)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = W.goes_up(order, w, j)
    return hit


def _require_reduced(W: AffineWeyl, word) -> tuple[int, ...]:
    word = tuple(word)
    if W.length_plus(W.from_word(word)) != len(word):
        raise ValueError(f"word {word} is not reduced")
    return word


def labeled_walks(W: AffineWeyl, color: str, word) -> list[LabeledWalk]:
    """All legal labeled walks along ``word`` in the given color."""
    if color not in COLOR_BASIS:
        raise ValueError(f"unknown color {color!r}")
    word = _require_reduced(W, word)
    order = BASIS_ORDER[COLOR_BASIS[color]]
    walks = [(W.one(), (), CoeffRF.one())]
    for j in word:
        nxt = []
        for z, steps, cnt in walks:
            zs = W.mul(z, W.simple(j))
            if _up(W, order, z, j):
                nxt.append((zs, steps + (("forward", "k"),), cnt * _Q))
            else:
                nxt.append((zs, steps + (("backward", "0"),), cnt))
                nxt.append((z, steps + (("fold", "k*"),), cnt * _QM1))
        walks = nxt
    return [LabeledWalk(color, steps, z, cnt) for z, steps, cnt in walks]


def enumerate_labeled(W: AffineWeyl, color: str, word) -> dict[WeylElt, CoeffRF]:
    """Total walk count per endpoint; blue puts mass q^len on one endpoint."""
    out: dict[WeylElt, CoeffRF] = {}
    for walk in labeled_walks(W, color, word):
        _add(out, walk.endpoint, walk.count)
    return out


# -- cross-validation --------------------------------------------------------

@dataclass(frozen=True)
class CrosscheckReport:
    word: tuple[int, ...]
    ok: bool
    mismatches: tuple[tuple[str, WeylElt, CoeffRF, CoeffRF], ...]


def crosscheck_X(W: AffineWeyl, word) -> CrosscheckReport:
    """Walk counts versus module coefficients, for all three colors.

    For every walk endpoint v, the count must equal the coefficient of the
    identity basis symbol in basis_v acted on by the reversed word.  (Acting
    on basis_1 by the word itself reproduces the action coefficients, not the
    walk counts; the walk side is the transpose.)  The coefficients for all v
    are gathered in one backward sweep of the action, and endpoints absent
    from the walk enumeration must come out zero.
    """
    word = _require_reduced(W, word)
    one = W.one()
    bad = []
    for color, tag in COLOR_BASIS.items():
        enum = enumerate_labeled(W, color, word)
        # C[v] = coeff of basis_1 in basis_v T_(reversed word); peeling the
        # last factor of the reversed word walks the original word forward.
        C = {one: CoeffRF.one()}
        for j in word:
            nxt: dict[WeylElt, CoeffRF] = {}
            for u, cu in C.items():
                us = W.mul(u, W.simple(j))
                for v in (us, u):
                    for tgt, coeff in _act_step(W, tag, v, j):
                        if tgt == u:
                            _add(nxt, v, coeff * cu)
            C = nxt
        for v in set(enum) | set(C):
            cnt = enum.get(v, CoeffRF.zero())
            coeff = C.get(v, CoeffRF.zero())
            if coeff != cnt:
                bad.append((color, v, cnt, coeff))
    return CrosscheckReport(word, not bad, tuple(bad))


def reduced_words(W: AffineWeyl, max_len: int):
    """Yield every reduced word of length <= max_len, shortest first."""
    frontier = [((), W.one())]
    yield ()
    for _ in range(max_len):
        nxt = []
        for word, w in frontier:
            for j in W.data.nodes():
                if W.goes_up("+", w, j):
                    ext = word + (j,)
                    yield ext
                    nxt.append((ext, W.mul(w, W.simple(j))))
        frontier = nxt
