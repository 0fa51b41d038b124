"""Command-line surface: orbits, Hasse exports, Macdonald polynomials,
characters, crystals, and Hecke-module actions, with a convention self-test.

Every subcommand prints a single deterministic document to stdout (JSON, CSV,
or DOT; identical inputs give byte-identical outputs).  Exit codes: 0 success,
1 computation error (a JSON error object is printed), 2 usage error, 3
convention self-test failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .config import Config
from .rootdata import (
    AffineCartanData,
    Weight,
    build_affine_data,
    simple_coroot,
    weight,
)
from .weyl import AffineWeyl, WeylElt
from .xring import (
    CoeffRF,
    FormalSeries,
    XPoly,
    coeff_to_json,
    xpoly_to_json,
    y_action,
)
from .macdonald import (
    SPECIALIZATIONS,
    E_tilde,
    bounded_char,
    demazure_char,
    extremal_char,
    specialize,
)
from . import crystal as crys
from .heckemod import BASIS_ORDER, COLOR_BASIS, crosscheck_X, enumerate_labeled


class UsageError(Exception):
    """Bad argument values discovered after argparse (exit code 2)."""


# ---------------------------------------------------------------------------
# parsing helpers

_WEIGHT_RE = re.compile(
    r"^\s*(-?\d+)\s*[ΛΛL]\s*\+\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*[ωωw]\s*$"
)


def parse_weight(data: AffineCartanData, text: str) -> Weight:
    """Parse ``"<level>Λ+<comma-separated coefficients>ω"`` (ASCII ``L``/``w``
    aliases accepted), e.g. ``0Λ+1ω`` or ``1Λ+0,1ω``."""
    m = _WEIGHT_RE.match(text)
    if not m:
        raise UsageError(
            f"cannot parse weight {text!r}; expected e.g. \"0L+1w\" "
            f"(level, then {data.rank} comma-separated omega coefficients)"
        )
    level = int(m.group(1))
    coeffs = tuple(int(a) for a in m.group(2).replace(" ", "").split(","))
    if len(coeffs) != data.rank:
        raise UsageError(
            f"weight {text!r} has {len(coeffs)} omega coefficients; "
            f"rank {data.rank} needs exactly {data.rank}"
        )
    return weight(data, omega=coeffs, level=level)


def parse_int_list(text: str) -> tuple[int, ...]:
    """Comma-separated integers; empty string means the empty tuple."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _context(args) -> tuple[AffineCartanData, AffineWeyl]:
    try:
        data = build_affine_data(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc))
    cfg = Config(level_zero_orientation=args.orientation)
    return data, AffineWeyl(data, cfg)


def _check_mu(data: AffineCartanData, mu: tuple[int, ...]) -> tuple[int, ...]:
    if len(mu) != data.rank:
        raise UsageError(
            f"--mu needs exactly {data.rank} coefficients for rank {data.rank}, "
            f"got {len(mu)}"
        )
    return mu


# ---------------------------------------------------------------------------
# serialization helpers

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def weight_json(wt: Weight) -> dict:
    return {"delta": str(wt.delta), "omega": list(wt.omega), "level": wt.level}


def series_json(s: FormalSeries) -> dict:
    return {
        "window": s.window,
        "truncated": s.truncated,
        "grades": [
            {"q": k, "terms": xpoly_to_json(s.terms[k])}
            for k in sorted(s.terms)
        ],
    }


def _wt_key(wt: Weight):
    return (wt.delta, wt.omega, wt.level)


def _orbit_rows(W: AffineWeyl, lam: Weight, radius: int):
    orb = W.orbit(lam, radius)
    rows = []
    for mu in sorted(orb, key=_wt_key):
        _, word = W.reduced_word(orb[mu])
        rows.append((mu, word))
    return orb, rows


# ---------------------------------------------------------------------------
# subcommand handlers (each returns the document to print)

def cmd_orbit(args) -> str:
    data, W = _context(args)
    lam = parse_weight(data, args.weight)
    if args.radius < 0:
        raise UsageError("--radius must be >= 0")
    _, rows = _orbit_rows(W, lam, args.radius)
    if args.out == "csv":
        head = ["delta"] + [f"omega_{i}" for i in data.finite_nodes()]
        head += ["level", "word"]
        lines = [",".join(head)]
        for mu, word in rows:
            cells = [str(mu.delta)] + [str(a) for a in mu.omega]
            cells += [str(mu.level), ".".join(str(j) for j in word)]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
    return _dump({
        "type": args.type,
        "rank": args.rank,
        "weight": weight_json(lam),
        "radius": args.radius,
        "points": [
            dict(weight_json(mu), word=list(word)) for mu, word in rows
        ],
    })


def cmd_hasse(args) -> str:
    data, W = _context(args)
    lam = parse_weight(data, args.weight)
    if args.radius < 0:
        raise UsageError("--radius must be >= 0")
    orb = W.orbit(lam, args.radius)
    points = sorted(orb, key=_wt_key)
    labels = {mu: crys.weight_label(mu) for mu in points}
    # Orbit adjacency is by left reflection mu -> s_j mu; comparing s_j w
    # against w is the same as comparing w^-1 s_j against w^-1 on the right,
    # which is what goes_up implements (for <=0 its built-in graded check is
    # literally about the lengths of the inverses).
    edges = set()
    for mu in points:
        winv = W.inv(orb[mu])
        for j in data.nodes():
            nu = W.act(W.simple(j), mu)
            if nu == mu or nu not in orb or not _wt_key(mu) < _wt_key(nu):
                continue
            if W.goes_up(args.order, winv, j):
                edges.add((labels[mu], j, labels[nu]))
            else:
                edges.add((labels[nu], j, labels[mu]))
    sorted_edges = sorted(edges)
    if args.out == "dot":
        lines = ["digraph hasse {"]
        for mu in points:
            lines.append(f'  "{labels[mu]}";')
        for src, j, dst in sorted_edges:
            lines.append(f'  "{src}" -> "{dst}" [label="s{j}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    return _dump({
        "type": args.type,
        "rank": args.rank,
        "order": args.order,
        "weight": weight_json(lam),
        "radius": args.radius,
        "nodes": [labels[mu] for mu in points],
        "edges": [[src, f"s{j}", dst] for src, j, dst in sorted_edges],
    })


def cmd_macdonald(args) -> str:
    data, W = _context(args)
    mu = _check_mu(data, parse_int_list(args.mu))
    if args.specialize is None:
        f = E_tilde(W, mu)
    else:
        f = specialize(W, mu, args.specialize)
    return _dump({
        "type": args.type,
        "rank": args.rank,
        "mu": list(mu),
        "specialization": args.specialize,
        "terms": xpoly_to_json(f),
    })


def cmd_demazure_char(args) -> str:
    data, W = _context(args)
    lam = parse_weight(data, args.weight)
    word = parse_int_list(args.word)
    bad = [j for j in word if j not in data.nodes()]
    if bad:
        raise UsageError(f"word letters {bad} out of node range 0..{data.rank}")
    series = demazure_char(W, lam, word)
    return _dump({
        "type": args.type,
        "rank": args.rank,
        "weight": weight_json(lam),
        "word": list(word),
        "character": series_json(series),
    })


def cmd_extremal_char(args) -> str:
    data, W = _context(args)
    mu = _check_mu(data, parse_int_list(args.mu))
    if args.window < 1:
        raise UsageError("--window must be >= 1")
    fn = bounded_char if args.bounded else extremal_char
    series = fn(W, mu, args.window, route=args.route)
    return _dump({
        "type": args.type,
        "rank": args.rank,
        "mu": list(mu),
        "window": args.window,
        "route": args.route,
        "bounded": bool(args.bounded),
        "character": series_json(series),
    })


def cmd_crystal(args) -> str:
    data, _ = _context(args)
    if (args.fundamental is None) == (args.tensor is None):
        raise UsageError("give exactly one of --fundamental or --tensor")
    if args.window < 1:
        raise UsageError("--window must be >= 1")

    def fund(i: int) -> crys.CrystalGraph:
        if i not in data.finite_nodes():
            raise UsageError(
                f"fundamental index {i} out of range 1..{data.rank}")
        return crys.fundamental_crystal(data, i, args.window)

    if args.fundamental is not None:
        C = fund(args.fundamental)
    else:
        pair = parse_int_list(args.tensor)
        if len(pair) != 2:
            raise UsageError("--tensor needs exactly two indices, e.g. 1,1")
        C = crys.tensor(fund(pair[0]), fund(pair[1]))
    if args.component is not None:
        if args.component not in C.vertices:
            raise UsageError(
                f"--component vertex {args.component!r} not in the graph "
                f"({len(C.vertices)} vertices)")
        C = crys.component(C, args.component)
    if args.quotient:
        C = crys.finite_quotient(C)
    if args.out == "dot":
        return crys.to_dot(C)
    return _dump(crys.crystal_to_json(C))


def cmd_hecke(args) -> str:
    data, W = _context(args)
    word = parse_int_list(args.word)
    bad = [j for j in word if j not in data.nodes()]
    if bad:
        raise UsageError(f"word letters {bad} out of node range 0..{data.rank}")
    color = {b: c for c, b in COLOR_BASIS.items()}[args.basis]
    table = enumerate_labeled(W, color, word)
    endpoints = []
    for w in table:
        c, red = W.reduced_word(w)
        endpoints.append((len(red), red, c, w))
    endpoints.sort(key=lambda e: e[:3])
    return _dump({
        "type": args.type,
        "rank": args.rank,
        "basis": args.basis,
        "color": color,
        "word": list(word),
        "endpoints": [
            {
                "omega_class": c,
                "word": list(red),
                "coefficient": coeff_to_json(table[w]),
            }
            for _, red, c, w in endpoints
        ],
    })


# ---------------------------------------------------------------------------
# self-test

def _check_orientation(cfg: Config) -> None:
    for rank in (1, 2):
        data = build_affine_data("A", rank)
        W = AffineWeyl(data, cfg)
        if not W.goes_up("0", W.one(), 0):
            raise AssertionError(
                f"rank {rank}: s_0 should raise the identity in the "
                "level-zero order")
        for j in data.finite_nodes():
            if W.goes_up("0", W.one(), j):
                raise AssertionError(
                    f"rank {rank}: s_{j} should lower the identity in the "
                    "level-zero order")


def _check_y_normalization(cfg: Config) -> None:
    # Y^{alpha_i-check} acts on the vacuum vector by t (both ranks, all i).
    for rank in (1, 2):
        data = build_affine_data("A", rank)
        W = AffineWeyl(data, cfg)
        one = XPoly.scalar(rank)
        expect = XPoly.scalar(rank, CoeffRF.t_pow(1))
        for i in data.finite_nodes():
            got = y_action(W, simple_coroot(data, i), one)
            if got != expect:
                raise AssertionError(
                    f"rank {rank}: Y^(alpha_{i} coroot) 1 != t 1: {got!r}")


def _check_macdonald_spot(cfg: Config) -> None:
    data = build_affine_data("A", 1)
    W = AffineWeyl(data, cfg)
    got = specialize(W, (-2,), "t0")
    expect = XPoly()
    expect.add_term(weight(data, omega=(-2,)), CoeffRF.one())
    expect.add_term(weight(data, omega=(2,)), CoeffRF.one())
    expect.add_term(weight(data, omega=(0,)), CoeffRF.one() + CoeffRF.q_pow(1))
    if got != expect:
        raise AssertionError(f"E~ at -2 omega_1 under t->0 came out as {got!r}")


def _check_walk_crosscheck(cfg: Config) -> None:
    data = build_affine_data("A", 1)
    W = AffineWeyl(data, cfg)
    report = crosscheck_X(W, (0, 1))
    if not report.ok:
        raise AssertionError(f"walk/module crosscheck failed: {report}")


def _check_crystal_quotient(cfg: Config) -> None:
    data = build_affine_data("A", 1)
    B = crys.fundamental_crystal(data, 1, 1)
    Q = crys.finite_quotient(B)
    if len(Q.vertices) != 2 or set(Q.grades.values()) != {0}:
        raise AssertionError(
            f"rank-1 fundamental quotient off: {sorted(Q.vertices)}, "
            f"grades {Q.grades}")


SELFTEST_CHECKS = (
    ("level-zero-orientation", _check_orientation),
    ("y-eigenvalue-normalization", _check_y_normalization),
    ("macdonald-t0-spot", _check_macdonald_spot),
    ("walk-module-crosscheck", _check_walk_crosscheck),
    ("crystal-quotient-grading", _check_crystal_quotient),
)


def cmd_selftest(args) -> tuple[str, int]:
    cfg = Config(level_zero_orientation=args.orientation)
    passed, failures = [], []
    for name, fn in SELFTEST_CHECKS:
        try:
            fn(cfg)
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            failures.append({"check": name, "message": str(exc)})
        else:
            passed.append(name)
    doc = {
        "selftest": "fail" if failures else "ok",
        "orientation": args.orientation,
        "passed": passed,
    }
    if failures:
        doc["failures"] = failures
    return _dump(doc), (3 if failures else 0)


# ---------------------------------------------------------------------------
# argument parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alcoves",
        description="Affine Weyl combinatorics, Macdonald polynomials, "
                    "characters, crystals, and Hecke-module actions.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-t", "--type", default="A",
                        help="Cartan type letter (default A)")
    common.add_argument("-r", "--rank", type=int, default=1,
                        help="finite rank n (default 1)")
    common.add_argument("--orientation", default="calibrated",
                        choices=("calibrated", "flipped"),
                        help="level-zero order orientation")

    p = sub.add_parser("orbit", parents=[common],
                       help="affine Weyl orbit of a weight")
    p.add_argument("--weight", required=True,
                   help='start weight, e.g. "0L+1w" (level, omega coefficients)')
    p.add_argument("--radius", type=int, default=6,
                   help="maximal number of reflections (default 6)")
    p.add_argument("--out", default="json", choices=("json", "csv"))

    p = sub.add_parser("hasse", parents=[common],
                       help="adjacent-cover Hasse diagram of an orbit")
    p.add_argument("--weight", required=True)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--order", default="0", choices=("+", "0", "-"),
                   help="which Bruhat order orients the edges (default 0)")
    p.add_argument("--out", default="dot", choices=("dot", "json"))

    p = sub.add_parser("macdonald", parents=[common],
                       help="nonsymmetric Macdonald polynomial E~_mu")
    p.add_argument("--mu", required=True,
                   help="omega coefficients of mu, comma separated")
    p.add_argument("--specialize", default=None, choices=SPECIALIZATIONS,
                   help="optional limit (q0, qinf, t0, tinf)")

    p = sub.add_parser("demazure-char", parents=[common],
                       help="graded Demazure character at positive level")
    p.add_argument("--weight", required=True,
                   help='dominant weight with level >= 1, e.g. "1L+0w"')
    p.add_argument("--word", default="",
                   help="Demazure word, comma separated (outermost first)")

    p = sub.add_parser("extremal-char", parents=[common],
                       help="level-zero extremal-weight character on a window")
    p.add_argument("--mu", required=True,
                   help="dominant omega coefficients, comma separated")
    p.add_argument("--window", type=int, default=Config().delta_window)
    p.add_argument("--route", default="t0", choices=SPECIALIZATIONS)
    p.add_argument("--bounded", action="store_true",
                   help="character of the bounded submodule instead")

    p = sub.add_parser("crystal", parents=[common],
                       help="level-zero crystal graphs and quotients")
    p.add_argument("--fundamental", type=int, default=None, metavar="I",
                   help="fundamental crystal B(omega_I) on the window")
    p.add_argument("--tensor", default=None, metavar="I,J",
                   help="tensor product of two fundamental crystals")
    p.add_argument("--window", type=int, default=1,
                   help="delta window for the unrolled graph (default 1)")
    p.add_argument("--component", default=None, metavar="VERTEX",
                   help="restrict to the connected component of this vertex")
    p.add_argument("--quotient", action="store_true",
                   help="take the graded finite quotient")
    p.add_argument("--out", default="json", choices=("json", "dot"))

    p = sub.add_parser("hecke", parents=[common],
                       help="Hecke-module action as labeled-walk counts")
    p.add_argument("--basis", required=True, choices=tuple(BASIS_ORDER),
                   help="module basis: T (blue), X (red), or L (green)")
    p.add_argument("--word", required=True,
                   help="reduced word, comma separated")
    p.add_argument("--out", default="json", choices=("json",))

    p = sub.add_parser("selftest",
                       help="run the convention calibration assertions")
    p.add_argument("--orientation", default="calibrated",
                   choices=("calibrated", "flipped"))

    return parser


HANDLERS = {
    "orbit": cmd_orbit,
    "hasse": cmd_hasse,
    "macdonald": cmd_macdonald,
    "demazure-char": cmd_demazure_char,
    "extremal-char": cmd_extremal_char,
    "crystal": cmd_crystal,
    "hecke": cmd_hecke,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own message
        return int(exc.code or 0)
    if args.cmd == "selftest":
        doc, code = cmd_selftest(args)
        sys.stdout.write(doc)
        return code
    try:
        doc = HANDLERS[args.cmd](args)
    except UsageError as exc:
        print(f"alcoves {args.cmd}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - contract: JSON error, exit 1
        sys.stdout.write(_dump({
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }))
        return 1
    sys.stdout.write(doc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
