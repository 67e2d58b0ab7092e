"""Command-line front end.

Exit status: 0 on success, 1 when the input fan or parameters fail
validation, 2 on usage errors.  Curve and ray indices in reports are 1-based.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import acc
from .fan import FanError, FanoFan, covering, fan_from_json, from_weights
from .intersection import example_blowup, fraction_str, length

log = logging.getLogger("toric_lengths")

FACTORIAL_WARN = 5000


class ValidationError(Exception):
    pass


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def parse_positive_fraction(text: str) -> Fraction:
    x = parse_fraction(text)
    if x <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive rational, got {text!r}")
    return x


def parse_weights(text: str) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers: {text!r}") from exc
    if len(w) < 2 or any(x <= 0 for x in w):
        raise argparse.ArgumentTypeError("need at least two positive weights")
    return w


def parse_set(text: str) -> list[Fraction]:
    return [parse_fraction(x) for x in text.split(",") if x.strip()]


def positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if x < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {x}")
    return x


def _sorted_weights(weights: tuple[int, ...]) -> tuple[tuple[int, ...], list[int]]:
    perm = sorted(range(len(weights)), key=lambda i: (weights[i], i))
    return tuple(weights[i] for i in perm), perm


def load_fan(args) -> tuple[FanoFan, list[int] | None]:
    if args.fan:
        try:
            with open(args.fan, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed fan JSON: {exc}") from exc
        except OSError as exc:
            raise ValidationError(str(exc)) from exc
        return fan_from_json(data), None
    if args.weights:
        w, perm = _sorted_weights(args.weights)
        if list(perm) != list(range(len(perm))):
            print(f"note: weights sorted to {list(w)} (permutation {[p + 1 for p in perm]})", file=sys.stderr)
        return from_weights(w), perm
    raise ValidationError("one of --weights or --fan is required")


def emit(args, payload) -> None:
    """Write JSON (or CSV rows when ``payload`` is a list of rows and --format csv)."""
    if getattr(args, "format", "json") == "csv" and isinstance(payload, list):
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(payload)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_wps(args) -> None:
    f, perm = load_fan(args)
    if args.emit_fan:
        with open(args.emit_fan, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(f.to_json(), separators=(",", ":")) + "\n")
    emit(args, {
        **f.to_json(),
        "permutation": [p + 1 for p in perm] if perm is not None else None,
        "mult_sigma": list(f.mult_sigma),
        "mult_mu": {c.label(): m for c, m in sorted(f.mult_mu.items())},
    })


def cmd_length(args) -> None:
    f, _ = load_fan(args)
    emit(args, length(f).to_json())


def cmd_cover(args) -> None:
    f, _ = load_fan(args)
    emit(args, covering(f).to_json())


def cmd_fake(args) -> None:
    if args.weights:
        w, _ = _sorted_weights(args.weights)
        fans = acc.enumerate_fake(len(w) - 1, max(w), args.overlattice_index, weights=[w])
    else:
        if not (args.dim and args.max_weight):
            raise ValidationError("fake needs --weights or both --dim and --max-weight")
        fans = acc.enumerate_fake(args.dim, args.max_weight, args.overlattice_index)
    out = []
    for f in fans:
        out.append({**f.to_json(), "cover_index": covering(f).cover_index, "length": fraction_str(length(f).value)})
    if args.format == "csv":
        rows = [["weights", "cover_index", "length_num", "length_den", "rays"]]
        for r in out:
            x = Fraction(r["length"])
            rows.append([" ".join(map(str, r["weights"])), r["cover_index"], x.numerator, x.denominator,
                         json.dumps(r["rays"], separators=(",", ":"))])
        emit(args, rows)
    else:
        emit(args, {"fans": out})


def cmd_certify(args) -> None:
    f, _ = load_fan(args)
    g, perm = acc.normalize_ordering(f)
    indices = [args.index - 1] if args.index else list(range(2, len(g.rays)))
    if not indices:
        raise ValidationError("certificates need dimension at least 2")
    certs = []
    for i in indices:
        eps = args.epsilon if args.epsilon is not None else acc.m_i_value(g, i) * Fraction(999, 1000)
        if acc.floor_inverse(eps) > FACTORIAL_WARN:
            log.warning("floor(1/epsilon) = %d exceeds %d; factorial bound is expensive",
                        acc.floor_inverse(eps), FACTORIAL_WARN)
        try:
            certs.append(acc.certify(g, i, eps).to_json())
        except (acc.CertificateError, ValueError) as exc:
            raise ValidationError(str(exc)) from exc
    emit(args, {
        "permutation": [p + 1 for p in perm],
        "weights": list(g.weights),
        "decomposition": [fraction_str(x) for x in acc.decomposition_terms(g)],
        "decomposition_holds": acc.length_decomposition_check(g),
        "certificates": certs,
    })


def cmd_scan(args) -> None:
    if not (args.dim and args.max_weight):
        raise ValidationError("scan needs --dim and --max-weight")
    eps = args.epsilon if args.epsilon is not None else Fraction(0)
    report = acc.scan_lengths(args.dim, args.max_weight, args.overlattice_index, eps)
    emit(args, report.csv_rows() if args.format == "csv" else report.to_json())


def cmd_series(args) -> None:
    rows = acc.series_abab(args.kmax)
    if args.format == "csv":
        emit(args, [["k", "length_num", "length_den"]] + [[k, x.numerator, x.denominator] for k, x in rows])
    else:
        emit(args, {"rows": [[k, fraction_str(x)] for k, x in rows]})


def cmd_blowup(args) -> None:
    try:
        report = example_blowup(args.a, args.b)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    emit(args, report.to_json())


def cmd_sumset(args) -> None:
    result = [Fraction(0)]
    for s in args.sets:
        result = acc.sumset(result, parse_set(s))
    emit(args, {"sumset": [fraction_str(x) for x in result]})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-lengths", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *, fan=False, fmt=False):
        p = sub.add_parser(name)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write the report here instead of stdout")
        if fan:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--weights", type=parse_weights, help="comma-separated weights a1,a2,...")
            src.add_argument("--fan", help="fan JSON file")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    p = add("wps", cmd_wps, fan=True)
    p.add_argument("--emit-fan", help="also write the fan JSON to this path")
    add("length", cmd_length, fan=True)
    add("cover", cmd_cover, fan=True)

    p = add("fake", cmd_fake, fmt=True)
    p.add_argument("--weights", type=parse_weights)
    p.add_argument("--dim", type=positive_int)
    p.add_argument("--max-weight", type=positive_int)
    p.add_argument("--overlattice-index", type=positive_int, default=1)

    p = add("certify", cmd_certify, fan=True)
    p.add_argument("--epsilon", type=parse_positive_fraction)
    p.add_argument("--index", type=positive_int, help="1-based index i >= 3; default all")

    p = add("scan", cmd_scan, fmt=True)
    p.add_argument("--dim", type=positive_int)
    p.add_argument("--max-weight", type=positive_int)
    p.add_argument("--overlattice-index", type=positive_int, default=1)
    p.add_argument("--epsilon", type=parse_fraction)

    p = add("series-abab", cmd_series, fmt=True)
    p.add_argument("--kmax", type=int, required=True)

    p = add("blowup", cmd_blowup)
    p.add_argument("--a", type=positive_int, required=True)
    p.add_argument("--b", type=positive_int, required=True)

    p = add("sumset", cmd_sumset)
    p.add_argument("sets", nargs="+", help="comma-separated rationals, e.g. 1/2,1/3")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if getattr(args, "kmax", 2) < 2:
        parser.print_usage(sys.stderr)
        print("error: --kmax must be at least 2", file=sys.stderr)
        return 2
    try:
        args.func(args)
    except (ValidationError, FanError, acc.NotNormalized) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
