"""Affine root-system data for untwisted simply-laced types (concretely A_n).

Coordinates
-----------
A ``Weight`` is an element of the affine weight lattice written in the basis
``{delta, omega_1, ..., omega_n, Lambda_0}``, which is dual to the coroot-side
basis ``{d, h_1, ..., h_n, K}``:

* ``delta``   -- rational coefficient on the null root delta,
* ``omega``   -- integer coefficients on the finite fundamental weights,
* ``level``   -- integer coefficient on Lambda_0 (equals the pairing with K).

A ``CorootVec`` is an integer vector on ``{h_1, ..., h_n}`` plus a multiple of
the central element ``K``.  The pairing never sees ``d`` (no weight we
manipulate is ever paired against it), so ``d`` is not carried.

Conventions fixed here and exercised in the tests:

* ``cartan[j][i] == pair(simple_root(i), simple_coroot(j))`` (note the
  transpose: row index is the coroot).
* ``alpha_0 = delta - theta`` and ``alpha_0_vee = K - h_theta``.
* The normalized invariant form on finite weights is
  ``form(omega_i, omega_j) = (C^-1)_{ij}`` (simply laced, long roots squared
  to 2), used for translation actions and the length formulas downstream.

>>> A1 = build_affine_data("A", 1)
>>> simple_root(A1, 1).omega
(2,)
>>> simple_root(A1, 0)
Weight(delta=Fraction(1, 1), omega=(-2,), level=0)
>>> pair(simple_root(A1, 1), simple_coroot(A1, 0))
-2
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "AffineCartanData",
    "Weight",
    "CorootVec",
    "build_affine_data",
    "weight",
    "zero_weight",
    "delta_weight",
    "lambda0",
    "pair",
    "simple_root",
    "simple_coroot",
    "fundamental_weights",
    "theta",
    "theta_coroot",
    "rho",
    "rho_coroot",
    "inverse_cartan",
    "form",
    "reflect",
    "root_coords",
    "root_is_negative",
    "positive_roots",
    "coroot_of_root",
    "data_to_json",
]


@dataclass(frozen=True)
class AffineCartanData:
    """Cartan data for an untwisted affine type, nodes indexed 0..rank."""

    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]  # cartan[j][i] = <alpha_i, h_j>
    marks: tuple[int, ...]               # finite marks: theta = sum marks[i] alpha_i
    comarks: tuple[int, ...]             # h_theta = sum comarks[i] h_i
    omega_order: int                     # order of the diagram-rotation group

    @property
    def n(self) -> int:
        return self.rank

    def nodes(self) -> range:
        """All node indices 0..n."""
        return range(self.rank + 1)

    def finite_nodes(self) -> range:
        """Finite node indices 1..n."""
        return range(1, self.rank + 1)


@dataclass(frozen=True)
class Weight:
    delta: Fraction
    omega: tuple[int, ...]
    level: int

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            self.delta + other.delta,
            tuple(a + b for a, b in zip(self.omega, other.omega, strict=True)),
            self.level + other.level,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(-self.delta, tuple(-a for a in self.omega), -self.level)

    def scale(self, c: int) -> "Weight":
        return Weight(self.delta * c, tuple(c * a for a in self.omega), c * self.level)

    def is_zero(self) -> bool:
        return self.delta == 0 and self.level == 0 and all(a == 0 for a in self.omega)

    def finite_part(self) -> "Weight":
        """Forget delta and Lambda_0; keep the omega coordinates."""
        return Weight(Fraction(0), self.omega, 0)


@dataclass(frozen=True)
class CorootVec:
    k: tuple[int, ...]   # coefficients on h_1..h_n
    kK: int              # coefficient on K

    def __add__(self, other: "CorootVec") -> "CorootVec":
        return CorootVec(
            tuple(a + b for a, b in zip(self.k, other.k, strict=True)),
            self.kK + other.kK,
        )

    def __neg__(self) -> "CorootVec":
        return CorootVec(tuple(-a for a in self.k), -self.kK)

    def __sub__(self, other: "CorootVec") -> "CorootVec":
        return self + (-other)


def build_affine_data(type_label: str, n: int) -> AffineCartanData:
    """Cartan data for the untwisted affine type ``type_label`` of rank ``n``.

    Only type A is wired up.  Types with unequal root lengths are rejected
    outright: their translation matrices need the d_i symmetrizers, which this
    code deliberately does not carry (everything here assumes d_i = 1).
    """
    letter = type_label.strip().upper().rstrip("~").rstrip("^(1)")
    if letter in {"B", "C", "F", "G"}:
        raise ValueError(
            f"type {letter} is not simply laced: the d_i symmetrizers (unequal "
            "root lengths) are not supported"
        )
    if letter == "D" and n < 4:
        raise ValueError(f"unsupported rank for type D: got {n}, need >= 4")
    if letter == "E" and n not in (6, 7, 8):
        raise ValueError(f"unsupported rank for type E: got {n}")
    if letter != "A":
        raise ValueError(
            f"type {letter} data tables are not implemented; only type A is"
        )
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")

    size = n + 1
    if n == 1:
        cartan = ((2, -2), (-2, 2))
    else:
        rows = []
        for j in range(size):
            row = []
            for i in range(size):
                if i == j:
                    row.append(2)
                elif (i - j) % size in (1, size - 1):
                    row.append(-1)
                else:
                    row.append(0)
            rows.append(tuple(row))
        cartan = tuple(rows)

    marks = tuple(1 for _ in range(n))
    comarks = tuple(1 for _ in range(n))
    data = AffineCartanData("A", n, cartan, marks, comarks, omega_order=size)
    _check_invariants(data)
    return data


def _check_invariants(data: AffineCartanData) -> None:
    c = data.cartan
    size = data.rank + 1
    for j in range(size):
        if c[j][j] != 2:
            raise AssertionError("cartan diagonal must be 2")
        for i in range(size):
            if i != j and c[j][i] > 0:
                raise AssertionError("cartan off-diagonals must be <= 0")
    # Row 0 must match alpha_0 = delta - theta paired against each h_j.
    for j in range(1, size):
        expected = -sum(data.marks[i - 1] * c[j][i] for i in range(1, size))
        if c[j][0] != expected:
            raise AssertionError("cartan row/column 0 inconsistent with marks")


# ---------------------------------------------------------------------------
# basic weights and coroots


def weight(data: AffineCartanData, delta=0, omega=None, level: int = 0) -> Weight:
    if omega is None:
        omega = (0,) * data.rank
    omega = tuple(int(a) for a in omega)
    if len(omega) != data.rank:
        raise ValueError(f"omega length {len(omega)} != rank {data.rank}")
    return Weight(Fraction(delta), omega, int(level))


def zero_weight(data: AffineCartanData) -> Weight:
    return weight(data)


def delta_weight(data: AffineCartanData) -> Weight:
    return weight(data, delta=1)


def lambda0(data: AffineCartanData) -> Weight:
    return weight(data, level=1)


def pair(lam: Weight, h: CorootVec) -> int:
    """Pairing <lam, h>; the delta coordinate pairs to zero against everything."""
    if len(lam.omega) != len(h.k):
        raise ValueError("rank mismatch in pairing")
    return sum(a * b for a, b in zip(lam.omega, h.k)) + lam.level * h.kK


def simple_root(data: AffineCartanData, i: int) -> Weight:
    """alpha_i as a Weight; alpha_0 = delta - theta."""
    if i not in data.nodes():
        raise IndexError(f"node index {i} out of range 0..{data.rank}")
    if i == 0:
        th = theta(data)
        return Weight(Fraction(1), tuple(-a for a in th.omega), 0)
    om = tuple(data.cartan[j][i] for j in data.finite_nodes())
    return Weight(Fraction(0), om, 0)


def simple_coroot(data: AffineCartanData, i: int) -> CorootVec:
    """alpha_i_vee; alpha_0_vee = K - h_theta = (-comarks, 1)."""
    if i not in data.nodes():
        raise IndexError(f"node index {i} out of range 0..{data.rank}")
    if i == 0:
        return CorootVec(tuple(-a for a in data.comarks), 1)
    k = tuple(1 if j == i else 0 for j in data.finite_nodes())
    return CorootVec(k, 0)


def theta(data: AffineCartanData) -> Weight:
    """Highest root of the finite subsystem, theta = sum marks[i] alpha_i."""
    om = [0] * data.rank
    for i in data.finite_nodes():
        ai = tuple(data.cartan[j][i] for j in data.finite_nodes())
        for j in range(data.rank):
            om[j] += data.marks[i - 1] * ai[j]
    return Weight(Fraction(0), tuple(om), 0)


def theta_coroot(data: AffineCartanData) -> CorootVec:
    return CorootVec(data.comarks, 0)


def rho(data: AffineCartanData) -> Weight:
    return weight(data, omega=(1,) * data.rank)


def rho_coroot(data: AffineCartanData) -> CorootVec:
    return CorootVec((1,) * data.rank, 0)


def fundamental_weights(data: AffineCartanData):
    """Return (finite omega_i list, affine Lambda_i list, rho, rho_vee).

    Lambda_i = omega_i + comark_i * Lambda_0 for finite i; Lambda_0 itself is
    the level-1 basis weight.  rho_vee is only ever used through pairings.
    """
    omegas = []
    lambdas = [lambda0(data)]
    for i in data.finite_nodes():
        om = weight(data, omega=tuple(1 if j == i else 0 for j in data.finite_nodes()))
        omegas.append(om)
        lambdas.append(Weight(om.delta, om.omega, data.comarks[i - 1]))
    return omegas, lambdas, rho(data), rho_coroot(data)


# ---------------------------------------------------------------------------
# the invariant form on finite parts


@functools.lru_cache(maxsize=None)
def inverse_cartan(data: AffineCartanData) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of the finite Cartan matrix (Fraction Gauss-Jordan)."""
    n = data.rank
    fin = [[Fraction(data.cartan[j][i]) for i in data.finite_nodes()]
           for j in data.finite_nodes()]
    aug = [row + [Fraction(int(i == j)) for i in range(n)]
           for j, row in enumerate(fin)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def form(data: AffineCartanData, x: Weight, y: Weight) -> Fraction:
    """Normalized invariant form on the finite parts: (omega_i, omega_j) = (C^-1)_ij.

    For a root beta and weight lam this computes <lam, beta_vee>; delta and
    Lambda_0 coordinates are ignored (both are isotropic against finite parts
    for every use this library makes of the form).
    """
    cinv = inverse_cartan(data)
    total = Fraction(0)
    for i, a in enumerate(x.omega):
        if a == 0:
            continue
        for j, b in enumerate(y.omega):
            if b:
                total += a * cinv[i][j] * b
    return total


# ---------------------------------------------------------------------------
# reflections and root bookkeeping


def reflect(data: AffineCartanData, i: int, lam: Weight) -> Weight:
    """s_i(lam) = lam - <lam, alpha_i_vee> alpha_i, uniformly in i = 0..n."""
    m = pair(lam, simple_coroot(data, i))
    if m == 0:
        return lam
    return lam - simple_root(data, i).scale(m)


def root_coords(data: AffineCartanData, beta: Weight) -> tuple[Fraction, ...]:
    """Finite part of beta expanded on the simple roots alpha_1..alpha_n."""
    cinv = inverse_cartan(data)
    return tuple(
        sum(cinv[i][j] * beta.omega[j] for j in range(data.rank))
        for i in range(data.rank)
    )


def root_is_negative(data: AffineCartanData, beta: Weight) -> bool:
    """Negativity of a real affine root: by delta coefficient, then by the
    finite height.  Raises on the zero finite part with zero delta (not a
    real root)."""
    if beta.delta != 0:
        return beta.delta < 0
    height = sum(root_coords(data, beta))
    if height == 0:
        raise ValueError(f"not a real root: {beta}")
    return height < 0


@functools.lru_cache(maxsize=None)
def positive_roots(data: AffineCartanData) -> tuple[Weight, ...]:
    """Positive roots of the finite subsystem, found by closing the simple
    roots under simple reflections."""
    simples = [simple_root(data, i) for i in data.finite_nodes()]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for beta in frontier:
            for i in data.finite_nodes():
                im = reflect(data, i, beta)
                if im not in seen and not root_is_negative(data, im):
                    seen.add(im)
                    new.append(im)
        frontier = new
    return tuple(sorted(seen, key=lambda b: (sum(root_coords(data, b)), b.omega)))


def coroot_of_root(data: AffineCartanData, beta: Weight) -> CorootVec:
    """beta_vee for a real root beta = (finite root) + m*delta (simply laced:
    coroot coefficients equal the root coefficients, K-part equals m)."""
    coords = root_coords(data, beta)
    k = []
    for c in coords:
        if c.denominator != 1:
            raise ValueError(f"not a root: {beta}")
        k.append(int(c))
    if beta.delta.denominator != 1:
        raise ValueError(f"not a real root: {beta}")
    return CorootVec(tuple(k), int(beta.delta))


def data_to_json(data: AffineCartanData) -> dict:
    return {
        "type": data.type_label,
        "rank": data.rank,
        "cartan": [list(row) for row in data.cartan],
        "marks": list(data.marks),
        "comarks": list(data.comarks),
    }
