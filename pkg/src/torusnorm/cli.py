"""Command-line front end.

Every subcommand is a thin adapter around one library call: read the
input files, invoke the operation, serialize the answer.  JSON payload
layouts are described in docs/json-formats.md.

Exit codes: 0 on success, 1 on a domain error (unreadable file, parse
failure, invalid instance, bad query), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from torusnorm.ball import UnitBall, ball_as_json, norm_eval, shortest_homotopic_length, unit_ball
from torusnorm.basis import good_short_basis
from torusnorm.genfun import generating_function, marked_equal, unmarked_equal_det, unmarked_equal_rand
from torusnorm.oracle import brute_norm, brute_spectrum
from torusnorm.reconstruct import graph_from_norm, norm_spec_from_json
from torusnorm.spectrum import spectrum, spectrum_multiset
from torusnorm.surface import (
    Cycle,
    EmbeddedGraph,
    Weight,
    homology_class,
    parse_graph,
    to_text,
    validate,
)


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load(path: str) -> EmbeddedGraph:
    return parse_graph(_read(path))


def _weight_json(g: EmbeddedGraph, w: Weight):
    if g.system.r == 1:
        q = w.as_fraction(g.scale)
        return {"num": q.numerator, "den": q.denominator}
    return {"coeffs": list(w.coeffs)}


def _cycle_json(g: EmbeddedGraph, c: Cycle) -> dict:
    return {
        "darts": list(c.darts),
        "class": list(c.homology_class),
        "weight": _weight_json(g, c.weight),
    }


def _parse_class(token: str) -> tuple[int, int]:
    x, _, y = token.partition(",")
    try:
        return (int(x), int(y))
    except ValueError:
        raise ValueError(f"bad homology class {token!r}, expected x,y") from None


def _parse_walk(tokens: list[str]) -> list[int]:
    darts = []
    for tok in tokens:
        eid, dot, side = tok.partition(".")
        if dot != "." or side not in ("0", "1"):
            raise ValueError(f"bad dart token {tok!r}, expected edge.side")
        try:
            darts.append(2 * int(eid) + int(side))
        except ValueError:
            raise ValueError(f"bad dart token {tok!r}") from None
    return darts


# ---------------------------------------------------------------------------
# Subcommands


def cmd_validate(args) -> int:
    g = parse_graph(_read(args.graph))
    report = validate(g)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_basis(args) -> int:
    g = _load(args.graph)
    basis = good_short_basis(g)
    payload = {"a": _cycle_json(g, basis.a), "b": _cycle_json(g, basis.b)}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def cmd_ball(args) -> int:
    g = _load(args.graph)
    ball = unit_ball(g)
    _emit(json.dumps(ball_as_json(ball), indent=2) + "\n", args.out)
    return 0


def cmd_norm(args) -> int:
    g = _load(args.graph)
    ball = unit_ball(g)
    if len(args.walk) == 1 and "," in args.walk[0]:
        cls = _parse_class(args.walk[0])
        value = norm_eval(ball, cls)
        payload = {"class": list(cls), "value": _weight_json(g, value)}
    else:
        walk = _parse_walk(args.walk)
        value = shortest_homotopic_length(ball, g, walk)
        payload = {
            "class": list(homology_class(g, walk)),
            "value": _weight_json(g, value),
        }
    print(json.dumps(payload))
    return 0


def cmd_spectrum(args) -> int:
    g = _load(args.graph)
    ball = unit_ball(g)
    lines = []
    if args.multiset:
        for value, mult, complete in spectrum_multiset(ball, args.k):
            lines.append(
                json.dumps(
                    {
                        "value": _weight_json(g, value),
                        "multiplicity": mult,
                        "complete": complete,
                    }
                )
            )
    else:
        for item in spectrum(ball, args.k):
            lines.append(
                json.dumps(
                    {"value": _weight_json(g, item.value), "class": list(item.cls)}
                )
            )
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def cmd_compare(args) -> int:
    b1 = unit_ball(_load(args.left))
    b2 = unit_ball(_load(args.right))
    if args.marked:
        match = marked_equal(b1, b2)
        print(json.dumps(match.matrix) if match else "NOT-EQUIVALENT")
        return 0
    gf1 = generating_function(b1)
    gf2 = generating_function(b2)
    if args.det:
        print("EQUAL" if unmarked_equal_det(gf1, gf2) else "NOT-EQUAL")
        return 0
    verdict = unmarked_equal_rand(
        gf1, gf2, args.trials, args.seed, threads=args.threads
    )
    if verdict.equal:
        print(
            f"probably equal (error probability <= {verdict.bound}; "
            f"trials={verdict.trials} seed={verdict.seed})"
        )
    else:
        print(
            f"different (witness {list(verdict.witness)} at trial "
            f"{verdict.witness_trial}; trials={verdict.trials} "
            f"seed={verdict.seed})"
        )
    return 0


def cmd_reconstruct(args) -> int:
    spec = norm_spec_from_json(_read(args.spec))
    g = graph_from_norm(spec)
    _emit(to_text(g), args.out)
    return 0


def cmd_oracle_norm(args) -> int:
    g = _load(args.graph)
    good_short_basis(g)
    cls = _parse_class(args.cls)
    value, cert = brute_norm(g, cls)
    payload = {
        "class": list(cls),
        "value": _weight_json(g, value),
        "window": cert.window,
    }
    print(json.dumps(payload))
    return 0


def cmd_oracle_spectrum(args) -> int:
    g = _load(args.graph)
    good_short_basis(g)
    lines = []
    for value, classes in brute_spectrum(g, args.k):
        for cls in classes:
            lines.append(
                json.dumps({"value": _weight_json(g, value), "class": list(cls)})
            )
    _emit("".join(line + "\n" for line in lines[: args.k]), args.out)
    return 0


# ---------------------------------------------------------------------------
# SVG plot


def _fmt(q: Fraction) -> str:
    """Exact fixed-point decimal with three places; no float rounding."""
    n = round(q * 1000)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 1000}.{n % 1000:03d}"


def render_ball_svg(ball: UnitBall, dilates: int) -> str:
    """Extremal polygon with its first integer dilates on the class lattice.

    Coordinates stay rational all the way to the final fixed-point
    formatting, so identical inputs give byte-identical output.
    """
    g = ball.graph
    if g.system.r != 1:
        raise ValueError("plot needs exact rational weights")
    if dilates < 1:
        raise ValueError("dilate count must be >= 1")
    corners = [
        (
            Fraction(e.cls[0]) / e.weight.as_fraction(g.scale),
            Fraction(e.cls[1]) / e.weight.as_fraction(g.scale),
        )
        for e in ball.extremal
    ]
    reach = max(max(abs(x), abs(y)) for x, y in corners) * dilates
    half = reach * Fraction(11, 10)
    px = Fraction(320)

    def place(x: Fraction, y: Fraction) -> tuple[str, str]:
        return _fmt(px + x * px / half), _fmt(px - y * px / half)

    def polygon(m: int, style: str) -> str:
        pts = " ".join(",".join(place(m * x, m * y)) for x, y in corners)
        return f'<polygon points="{pts}" {style}/>'

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        'viewBox="0 0 640 640">',
        '<rect width="640" height="640" fill="#ffffff"/>',
        '<line x1="0" y1="320" x2="640" y2="320" stroke="#cccccc"/>',
        '<line x1="320" y1="0" x2="320" y2="640" stroke="#cccccc"/>',
    ]
    for m in range(dilates, 1, -1):
        out.append(polygon(m, 'fill="none" stroke="#88aacc" stroke-width="1"'))
    out.append(
        polygon(
            1,
            'fill="#cc3333" fill-opacity="0.12" stroke="#cc3333" stroke-width="2"',
        )
    )
    span = int(half)
    for yy in range(span, -span - 1, -1):
        for xx in range(-span, span + 1):
            cx, cy = place(Fraction(xx), Fraction(yy))
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2" fill="#999999"/>')
    for x, y in corners:
        cx, cy = place(x, y)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="#cc3333"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_plot(args) -> int:
    g = _load(args.graph)
    ball = unit_ball(g)
    _emit(render_ball_svg(ball, args.dilates), args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusnorm",
        description="Polyhedral norms and length spectra of weighted "
        "graphs on the torus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph file, print a report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("basis", help="good short basis as JSON")
    p.add_argument("graph")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("ball", help="unit ball (H and extremal set) as JSON")
    p.add_argument("graph")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser(
        "norm", help="norm of a class x,y or of a closed dart walk"
    )
    p.add_argument("graph")
    p.add_argument(
        "walk",
        nargs="+",
        metavar="CLASS|DART",
        help='either one "x,y" token or a closed walk of edge.side tokens',
    )
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("spectrum", help="first k spectrum items, JSON lines")
    p.add_argument("graph")
    p.add_argument("-k", type=int, required=True, help="number of items")
    p.add_argument(
        "--multiset",
        action="store_true",
        help="aggregate equal values into (value, multiplicity) groups",
    )
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare", help="marked or unmarked isospectrality")
    p.add_argument("left")
    p.add_argument("right")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--marked", action="store_true")
    mode.add_argument("--unmarked", action="store_true")
    p.add_argument(
        "--det", action="store_true", help="deterministic unmarked test"
    )
    p.add_argument(
        "--trials", type=int, help="randomized unmarked test with T trials"
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--threads", type=int, default=1, help="worker threads for trials"
    )
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "reconstruct", help="build a graph realizing a norm JSON file"
    )
    p.add_argument("spec")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser(
        "oracle", help="exhaustive reference answers (slow, for checking)"
    )
    osub = p.add_subparsers(dest="oracle_command", required=True)
    po = osub.add_parser("norm")
    po.add_argument("graph")
    po.add_argument("cls", metavar="CLASS", help='homology class as "x,y"')
    po.add_argument(
        "--threads",
        type=int,
        default=1,
        help="hint only; the exhaustive sweep runs single-threaded",
    )
    po.set_defaults(func=cmd_oracle_norm)
    po = osub.add_parser("spectrum")
    po.add_argument("graph")
    po.add_argument("-k", type=int, required=True)
    po.add_argument("--threads", type=int, default=1, help="hint only")
    po.add_argument("--out", help="write to a file instead of stdout")
    po.set_defaults(func=cmd_oracle_spectrum)

    p = sub.add_parser("plot", help="SVG of the unit ball and its dilates")
    p.add_argument("graph")
    p.add_argument(
        "--dilates", type=int, default=4, help="how many dilates to draw"
    )
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "compare" and not args.marked:
        if args.det == (args.trials is not None):
            print(
                "error: --unmarked needs exactly one of --det / --trials",
                file=sys.stderr,
            )
            return 2
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
