"""Command line interface: analyze a solenoid, combine fixtures, list
the registry, and run the built-in selftest.

Exit codes: 0 success, 1 bad input, 2 hypothesis violation (a conjugate
of c on the unit circle, or a precondition like N > 1), 3 internal
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys as _sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .engine import (
    GradedGroup,
    finite_part_homology,
    groupoid_homology,
    hk_check,
    k_theory,
    kunneth_product,
    lefschetz_trace,
    principalization,
    transfer_colimit,
)
from .errors import (
    AtomClassExceeded,
    BoundaryRoot,
    HypothesisN1,
    IndexObstruction,
    ParseError,
    SolhomError,
    ZeroInput,
)
from .fgab import FgAbGroup, endomorphism
from .limits import canonical_form
from .linalg import IntMatrix
from .nfield import NumberField
from .places import SolenoidSystem, build_system
from .qpoly import clear_to_monic_integer, parse_poly

SCHEMA_VERSION = 1

DEFAULT_LEFSCHETZ = 6


# ---------------------------------------------------------------------------
# fixtures

FIXTURE_POLYS = {
    "torus-golden": "x^2-x-1",
    "sqrt-minus-5": "x^2-x+3/2",
}


def fixture_names() -> list[str]:
    return ["klein", "point", "solenoid:q/p", *sorted(FIXTURE_POLYS)]


def klein_fixture() -> tuple[list[FgAbGroup], list]:
    """Cell structure of the flat Klein bottle with the composed double
    transfer: degree zero scales by 9, degree one scales the free part
    by 3 and fixes the 2-torsion class."""
    z = FgAbGroup(1, ())
    z_tor = FgAbGroup(1, (2,))
    trivial = FgAbGroup(0, ())
    transfers = [
        endomorphism(z, IntMatrix([[9]])),
        endomorphism(z_tor, IntMatrix([[3, 0], [0, 1]])),
        None,
    ]
    return [z, z_tor, trivial], transfers


def fixture_graded(name: str) -> GradedGroup:
    if name == "klein":
        return transfer_colimit(*klein_fixture())
    if name == "point":
        z = FgAbGroup(1, ())
        return transfer_colimit([z], [endomorphism(z, IntMatrix([[1]]))])
    if name.startswith("solenoid:"):
        ratio = Fraction(name.split(":", 1)[1])
        return groupoid_homology(_rational_system(ratio))
    if name in FIXTURE_POLYS:
        return groupoid_homology(build_system(FIXTURE_POLYS[name]))
    raise ParseError(f"unknown fixture {name!r}; see the fixtures command")


def _rational_system(ratio: Fraction) -> SolenoidSystem:
    if ratio == 0:
        raise ZeroInput("c must be nonzero")
    sign = "-" if ratio > 0 else "+"
    return build_system(f"x{sign}{abs(ratio)}")


def fixture_detail(name: str) -> dict:
    if name == "klein":
        groups, transfers = klein_fixture()
        return {
            "kind": "transfer data",
            "degrees": [
                {
                    "group": g.pretty(),
                    "transfer": None if t is None else [list(r) for r in t.matrix.rows],
                }
                for g, t in zip(groups, transfers)
            ],
        }
    if name == "point":
        return {"kind": "transfer data", "degrees": [{"group": "Z", "transfer": [[1]]}]}
    if name.startswith("solenoid:"):
        return {"kind": "system", **_rational_system(Fraction(name.split(":", 1)[1])).describe()}
    if name in FIXTURE_POLYS:
        return {"kind": "system", **build_system(FIXTURE_POLYS[name]).describe()}
    raise ParseError(f"unknown fixture {name!r}; see the fixtures command")


# ---------------------------------------------------------------------------
# report assembly

def _rat_str(x) -> str:
    return str(Fraction(x))


def _matrix_json(m) -> list[list[str]]:
    return [[_rat_str(x) for x in row] for row in m.rows]


def _graded_json(graded: GradedGroup) -> dict:
    out = {}
    for degree in sorted(graded.entries):
        entry = graded.entries[degree]
        if entry.is_zero():
            continue
        record: dict = {"provenance": entry.provenance}
        if entry.closed is not None:
            record["group"] = entry.closed.pretty()
        else:
            record["group"] = f"colim(Z^{entry.colimit.rank}, tower below)"
            record["tower"] = [list(r) for r in entry.colimit.matrix.rows]
            sig = entry.colimit.signature()
            record["signature"] = {
                "rank": sig.rank,
                "mod_p_ranks": [list(pair) for pair in sig.mod_p_ranks],
            }
            record["provenance"] = "tower (signature-only)"
        if entry.action is not None:
            record["action"] = _matrix_json(entry.action)
        out[str(degree)] = record
    return out


def _k_group_json(group) -> dict:
    try:
        form = canonical_form(group)
        return {"group": form.pretty(), "provenance": "canonical_form"}
    except AtomClassExceeded:
        sig = group.signature()
        return {
            "group": f"colim(Z^{group.rank}, tower below)",
            "tower": [list(r) for r in group.matrix.rows],
            "signature": {
                "rank": sig.rank,
                "mod_p_ranks": [list(pair) for pair in sig.mod_p_ranks],
            },
            "provenance": "tower (signature-only)",
        }


def build_report(sys_: SolenoidSystem, lefschetz_n: int) -> dict:
    """Full analysis of one system; side filtering happens at render
    time so cached payloads do not depend on it."""
    g, h = principalization(sys_)
    k0, k1 = k_theory(sys_)
    hk = hk_check(sys_)
    report = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "system": sys_.describe(),
        "principalization": {"exponent": h, "generator_norm": _rat_str(g.norm())},
        "homology": {
            "unstable": _graded_json(groupoid_homology(sys_, "unstable")),
            "stable": _graded_json(groupoid_homology(sys_, "stable")),
        },
        "k_theory": {"K0": _k_group_json(k0), "K1": _k_group_json(k1)},
        "hk": {
            "verdicts": {str(i): v for i, v in hk["verdicts"].items()},
            "rank_identity": hk["rank_identity"],
        },
        "lefschetz": [
            {
                "n": n,
                "trace": lefschetz_trace(sys_, n),
                "periodic_points": sys_.periodic_points(n),
            }
            for n in range(1, lefschetz_n + 1)
        ],
    }
    return report


def _render_text(report: dict, side: str) -> str:
    lines = []
    system = report["system"]
    lines.append(f"minimal polynomial   {system['min_poly']}")
    lines.append(
        f"field                degree {system['field_degree']}, "
        f"discriminant {system['field_discriminant']}"
    )
    arch = system["archimedean"]
    lines.append(
        "archimedean          "
        f"{arch['contracting_real']} contracting real, "
        f"{arch['contracting_complex_pairs']} contracting complex pair(s), "
        f"{arch['expanding_real']} expanding real, "
        f"{arch['expanding_complex_pairs']} expanding complex pair(s)"
    )
    for label, key in (("stable", "finite_stable"), ("unstable", "finite_unstable")):
        for place in system[key]:
            lines.append(
                f"finite {label:<9}    p = {place['p']}, e = {place['e']}, "
                f"f = {place['f']}, v(c) = {place['valuation']}"
            )
    lines.append(f"transfer index N     {system['transfer_index']}")
    lines.append(f"degree shift d       {system['degree_shift']}")
    lines.append(f"orientation sign     {system['orientation_sign']:+d}")
    p9n = report["principalization"]
    lines.append(f"principalization     exponent {p9n['exponent']}")
    sides = ("unstable", "stable") if side == "both" else (side,)
    for s in sides:
        lines.append(f"{s} homology:")
        graded = report["homology"][s]
        for degree in sorted(graded, key=int):
            rec = graded[degree]
            lines.append(f"  H_{degree} = {rec['group']}   [{rec['provenance']}]")
    lines.append("K-theory:")
    for name in ("K0", "K1"):
        rec = report["k_theory"][name]
        lines.append(f"  {name} = {rec['group']}   [{rec['provenance']}]")
    verdicts = report["hk"]["verdicts"]
    lines.append(
        f"homology/K comparison: K0 {verdicts['0']}, K1 {verdicts['1']}, "
        f"rank identity {'holds' if report['hk']['rank_identity'] else 'fails'}"
    )
    lines.append("periodic points:")
    lines.append("  n      trace     count")
    for row in report["lefschetz"]:
        lines.append(f"  {row['n']:<5}{row['trace']:>8}{row['periodic_points']:>10}")
    lines.append(f"elapsed: {report['timing_seconds']:.3f}s" + (
        "  (cached)" if report.get("cache") == "hit" else ""
    ))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# cache

def _cache_dir() -> Path:
    env = os.environ.get("SOLHOM_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "solhom"


def _cache_key(min_poly: str, element: str | None, lefschetz_n: int, cap: int) -> str:
    payload = {
        "min_poly": min_poly,
        "element": element,
        "schema_version": SCHEMA_VERSION,
        "lefschetz": lefschetz_n,
        "cap_multiplier": cap,
    }
    digest = hashlib.sha256(
        json.dumps(payload, sort_keys=True).encode("utf-8")
    ).hexdigest()
    return digest


def _cache_read(key: str) -> dict | None:
    path = _cache_dir() / f"{key}.json"
    try:
        return json.loads(path.read_text())
    except (OSError, ValueError):
        return None


def _cache_write(key: str, report: dict) -> None:
    directory = _cache_dir()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{key}.json"
        path.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    except OSError:
        pass  # caching is best effort


# ---------------------------------------------------------------------------
# commands

def _system_from_args(args) -> tuple[SolenoidSystem, str, str | None]:
    if (args.c is None) == (args.min_poly is None):
        raise ParseError("provide exactly one of --c or --min-poly")
    if args.element is not None and args.min_poly is None:
        raise ParseError("--element needs --min-poly")
    if args.c is not None:
        try:
            ratio = Fraction(args.c)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot read {args.c!r} as a rational") from exc
        return _rational_system(ratio), f"x-({ratio})", None
    poly = parse_poly(args.min_poly)
    canonical = poly.monic().pretty() if poly.degree >= 1 else args.min_poly
    if args.element is None:
        return build_system(poly), canonical, None
    if poly.degree < 1:
        raise ParseError("the minimal polynomial must be nonconstant")
    monic_int, scale = clear_to_monic_integer(poly.monic())
    field = NumberField(monic_int)
    root = field.gen().scale(Fraction(1, scale))
    expr = parse_poly(args.element)
    value = field.zero()
    for coeff in expr.coeffs:
        value = value * root + field.from_rational(coeff)
    if value.is_zero():
        raise ZeroInput("the element evaluates to zero")
    return build_system(value.min_poly_over_q()), canonical, expr.pretty()


def cmd_analyze(args) -> int:
    start = time.perf_counter()
    sys_, poly_key, element_key = _system_from_args(args)
    key = _cache_key(poly_key, element_key, args.lefschetz, args.cap_multiplier)
    report = None
    cache_state = "miss"
    if not args.no_cache:
        report = _cache_read(key)
        if report is not None:
            cache_state = "hit"
    if report is None:
        report = build_report(sys_, args.lefschetz)
        if not args.no_cache:
            _cache_write(key, report)
    report = dict(report)
    report["timing_seconds"] = time.perf_counter() - start
    report["cache"] = cache_state
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_render_text(report, args.side))
    return 0


def cmd_kunneth(args) -> int:
    graded = fixture_graded(args.fixtures[0])
    for name in args.fixtures[1:]:
        graded = kunneth_product(graded, fixture_graded(name))
    payload = {
        str(d): graded.entry(d).closed.pretty() for d in graded.degrees()
    }
    if args.json:
        print(json.dumps({"factors": args.fixtures, "product": payload}, indent=2))
    else:
        print(" x ".join(args.fixtures))
        if not payload:
            print("  0")
        for degree in sorted(payload, key=int):
            print(f"  H_{degree} = {payload[degree]}")
    return 0


def cmd_fixtures(args) -> int:
    if args.show:
        detail = fixture_detail(args.show)
        print(json.dumps(detail, indent=2, sort_keys=True))
        return 0
    names = fixture_names()
    if args.json:
        print(json.dumps(names, indent=2))
    else:
        for name in names:
            print(name)
    return 0


SELFTEST_CASES = (
    ("x-3/2", {0: "Z[1/3]", 1: "Z[1/2]"}),
    ("x^2-x-1", {-1: "Z", 0: "Z^2", 1: "Z"}),
    ("x^2-x+3/2", {0: "Z[1/3]", 2: "Z[1/2]"}),
)


def cmd_selftest(_args) -> int:
    failures = 0
    for poly, expected in SELFTEST_CASES:
        sys_ = build_system(poly)
        hom = groupoid_homology(sys_)
        ok = all(hom.entry(d).pretty() == want for d, want in expected.items())
        hk = hk_check(sys_)
        ok = ok and hk["verdicts"] == {0: "equal", 1: "equal"} and hk["rank_identity"]
        ok = ok and all(
            abs(lefschetz_trace(sys_, n)) == sys_.periodic_points(n)
            for n in range(1, 5)
        )
        print(f"{'ok' if ok else 'FAIL'}  {poly}")
        failures += 0 if ok else 1
    klein = transfer_colimit(*klein_fixture())
    ok = klein.entry(1).pretty() == "Z[1/3] + Z/2"
    print(f"{'ok' if ok else 'FAIL'}  klein transfer colimit")
    failures += 0 if ok else 1
    return 0 if failures == 0 else 3


# ---------------------------------------------------------------------------
# entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solhom",
        description="Exact homology and K-theory of algebraic-number solenoids.",
    )
    parser.add_argument("--version", action="version", version=f"solhom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full invariant report for one system")
    analyze.add_argument("--c", help="rational multiplier, e.g. 3/2")
    analyze.add_argument("--min-poly", help="minimal polynomial of c, e.g. x^2-x-1")
    analyze.add_argument(
        "--element",
        help="polynomial in x giving c in terms of the root of --min-poly",
    )
    analyze.add_argument(
        "--side", choices=("stable", "unstable", "both"), default="both"
    )
    analyze.add_argument(
        "--lefschetz", type=int, default=DEFAULT_LEFSCHETZ, metavar="N",
        help="tabulate traces and counts for periods 1..N",
    )
    analyze.add_argument("--json", action="store_true")
    analyze.add_argument("--no-cache", action="store_true")
    analyze.add_argument(
        "--cap-multiplier", type=int, default=1, metavar="M",
        help="scale the membership overscan cap",
    )
    analyze.set_defaults(func=cmd_analyze)

    kunneth = sub.add_parser("kunneth", help="graded product of fixtures")
    kunneth.add_argument("fixtures", nargs="+", metavar="FIXTURE")
    kunneth.add_argument("--json", action="store_true")
    kunneth.set_defaults(func=cmd_kunneth)

    fixtures = sub.add_parser("fixtures", help="list or inspect the registry")
    fixtures.add_argument("--show", metavar="NAME")
    fixtures.add_argument("--json", action="store_true")
    fixtures.set_defaults(func=cmd_fixtures)

    selftest = sub.add_parser("selftest", help="quick end-to-end sanity battery")
    selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that slot means hypothesis
        # violation here, so fold usage problems into the parse code
        return 0 if exc.code == 0 else 1
    if getattr(args, "cap_multiplier", 1) != 1:
        from . import limits

        if args.cap_multiplier < 1:
            print("solhom: --cap-multiplier must be at least 1", file=_sys.stderr)
            return 1
        limits.MEMBERSHIP_CAP_FACTOR = 10 * args.cap_multiplier
    try:
        return args.func(args)
    except (ParseError, ZeroInput, ValueError) as exc:
        print(f"solhom: {exc}", file=_sys.stderr)
        return 1
    except (BoundaryRoot, HypothesisN1, IndexObstruction) as exc:
        print(f"solhom: hypothesis violated: {exc}", file=_sys.stderr)
        return 2
    except SolhomError as exc:
        print(f"solhom: internal: {type(exc).__name__}: {exc}", file=_sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
