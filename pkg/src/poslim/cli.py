"""Command-line front end.

Machine-readable output (CSV or JSON, chosen by --format) goes to stdout or
--out; a one-line human summary goes to stderr.  Exit codes: 0 success,
2 usage/validation error, 1 internal error.  All randomness is derived from
--seed through the documented counter-based streams, so identical argv
produce byte-identical outputs.  A POSLIM_THREADS worker count may be set
but cannot change any result: every worker reads the same stream positions
it would have read serially.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import measures, poset, recognition, sampling, semiorders
from .densities import density
from .errors import FormatError, PoslimError
from .rng import SeededRng


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _resolve_poset(spec: str) -> poset.FinitePoset:
    try:
        return poset.named_poset(spec)
    except FormatError:
        pass
    return poset.read_poset(_read_text(spec))


def _load_measure(path: str) -> measures.Measure:
    return measures.read_measure(_read_text(path))


def _emit(text: str, out: str | None, summary: str) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise FormatError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)


def _fmt_fraction(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def _dict_output(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(payload.keys())
    w.writerow([int(v) if isinstance(v, bool) else v for v in payload.values()])
    return buf.getvalue()


def _kernel_from_args(args) -> object:
    if args.kernel == "gc":
        if args.c is None:
            raise FormatError("--kernel gc needs --c")
        return semiorders.gc(args.c)
    if args.kernel == "g":
        if not getattr(args, "infile", None):
            raise FormatError("--kernel g needs --in <pwl file>")
        return semiorders.read_g(_read_text(args.infile))
    if args.kernel == "rate":
        if not getattr(args, "infile", None):
            raise FormatError("--kernel rate needs --in <rate file>")
        return semiorders.read_rate(_read_text(args.infile))
    if args.kernel == "measure":
        if not getattr(args, "infile", None):
            raise FormatError("--kernel measure needs --in <measure file>")
        return _load_measure(args.infile)
    raise FormatError(f"unknown kernel {args.kernel!r}")


def _cmd_sample(args) -> int:
    kernel = _kernel_from_args(args)
    p = sampling.sample_kernel_poset(kernel, args.n, SeededRng(args.seed))
    _emit(
        poset.write_poset(p),
        args.out,
        f"sampled {p.n}-point poset ({p.pair_count()} related pairs) "
        f"from {args.kernel} kernel, seed {args.seed}",
    )
    return 0


def _cmd_density(args) -> int:
    q = _resolve_poset(args.q)
    p = _resolve_poset(args.p)
    value = density(q, p, args.kind)
    _emit(
        _fmt_fraction(value) + "\n",
        args.out,
        f"{args.kind} density of {args.q} in {args.p}",
    )
    return 0


def _cmd_recognize(args) -> int:
    p = _resolve_poset(args.infile)
    payload = {
        "interval_order": recognition.is_interval_order(p),
        "semiorder": recognition.is_semiorder(p),
    }
    _emit(
        _dict_output(payload, args.format),
        args.out,
        f"recognized {p.n}-point poset: interval_order={payload['interval_order']}"
        f", semiorder={payload['semiorder']}",
    )
    return 0


def _cmd_represent(args) -> int:
    p = _resolve_poset(args.infile)
    rep = recognition.interval_representation(p)
    _emit(
        recognition.write_representation(rep),
        args.out,
        f"interval representation of {p.n} points, left endpoints k/{p.n}",
    )
    return 0


def _cmd_project(args) -> int:
    mu = _load_measure(args.infile)
    if not isinstance(mu, measures.StepKernelMeasure):
        raise FormatError("project needs a stepmeasure input")
    star = measures.project_star(mu).canonical()
    _emit(
        measures.write_measure(star),
        args.out,
        f"canonical projection has {len(star.conditionals)} cells",
    )
    return 0


def _cmd_equiv(args) -> int:
    a = _load_measure(args.a)
    b = _load_measure(args.b)
    if args.statistical:
        if args.seed is None:
            raise FormatError("equiv --statistical needs --seed")
        report = sampling.equivalence_test_statistical(
            a, b, args.n, args.trials, SeededRng(args.seed)
        )
        text = report.to_json() if args.format == "json" else report.to_csv()
        _emit(
            text,
            args.out,
            f"statistical test over {args.trials} trials at n={args.n}: "
            f"{len(report.flagged_ids())} flagged patterns",
        )
        return 0
    if not isinstance(a, measures.StepKernelMeasure) or not isinstance(
        b, measures.StepKernelMeasure
    ):
        raise FormatError("exact equiv compares two stepmeasure files")
    same = measures.equivalent(a, b)
    _emit(
        _dict_output({"equivalent": same}, args.format),
        args.out,
        f"measures are {'equivalent' if same else 'not equivalent'}",
    )
    return 0


def _cdf_output(cdf: measures.StepCDF, fmt: str) -> str:
    if fmt == "json":
        return (
            json.dumps(
                {
                    "points": [
                        [_fmt_fraction(x), _fmt_fraction(l), _fmt_fraction(r)]
                        for x, l, r in cdf.points
                    ]
                },
                indent=2,
            )
            + "\n"
        )
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "left", "right"])
    for x, l, r in cdf.points:
        w.writerow([_fmt_fraction(x), _fmt_fraction(l), _fmt_fraction(r)])
    return buf.getvalue()


def _cmd_nu(args) -> int:
    p = _resolve_poset(args.infile)
    cdf = sampling.nu_empirical(p, args.sign)
    _emit(
        _cdf_output(cdf, args.format),
        args.out,
        f"empirical {args.sign} degree CDF of {p.n} points "
        f"({len(cdf.points)} breakpoints)",
    )
    return 0


def _cmd_fingerprint(args) -> int:
    p = _resolve_poset(args.infile)
    fp = sampling.fingerprint(p, args.max_q)
    if args.format == "json":
        payload = {
            e.poset_id: {
                "label": e.label,
                "value": str(e.value),
                "half_width": str(e.half_width),
            }
            for e in fp.entries
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["poset_id", "label", "value", "half_width"])
        for e in fp.entries:
            w.writerow(e.as_row())
        text = buf.getvalue()
    _emit(text, args.out, f"fingerprint over {len(fp.entries)} patterns")
    return 0


def _cmd_rgo(args) -> int:
    p = sampling.random_graph_order(args.n, args.p, SeededRng(args.seed))
    c = sampling.c_parameter(args.n, args.p)
    _emit(
        poset.write_poset(p),
        args.out,
        f"random graph order n={args.n} p={args.p} seed={args.seed}; "
        f"shift parameter c={c:.6g}",
    )
    return 0


def _cmd_converge(args) -> int:
    posets = [poset.read_poset(_read_text(path)) for path in args.infiles]
    target = None
    if args.gc is not None:
        target = semiorders.gc(args.gc)
    elif args.g is not None:
        target = semiorders.read_g(_read_text(args.g))
    elif args.rate is not None:
        target = semiorders.g_from_rate(semiorders.read_rate(_read_text(args.rate)))
    report = sampling.converge_diagnostic(posets, target, threshold=args.threshold)
    text = report.to_json() if args.format == "json" else report.to_csv()
    _emit(text, args.out, f"verdict: {report.verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="poslim",
        description="Interval order and semiorder limits: densities, "
        "samplers, representations, diagnostics.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(sp, seed=False, n=False, fmt=True, out=True):
        if seed:
            sp.add_argument("--seed", type=int, required=True)
        if n:
            sp.add_argument("--n", type=int, required=True)
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="json")
        if out:
            sp.add_argument("--out", default=None)

    sp = sub.add_parser("sample", help="sample a random poset from a kernel")
    sp.add_argument("--kernel", choices=("gc", "g", "rate", "measure"), required=True)
    sp.add_argument("--c", type=_fraction, default=None)
    sp.add_argument("--in", dest="infile", default=None)
    add_common(sp, seed=True, n=True, fmt=False)
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser("density", help="exact density of one poset in another")
    sp.add_argument("--q", required=True, help="pattern: name or poset file")
    sp.add_argument("--p", required=True, help="host: name or poset file")
    sp.add_argument("--kind", choices=("hom", "inj", "ind"), required=True)
    add_common(sp, fmt=False)
    sp.set_defaults(func=_cmd_density)

    sp = sub.add_parser("recognize", help="interval order / semiorder tests")
    sp.add_argument("--in", dest="infile", required=True)
    add_common(sp)
    sp.set_defaults(func=_cmd_recognize)

    sp = sub.add_parser("represent", help="evenly spaced interval representation")
    sp.add_argument("--in", dest="infile", required=True)
    add_common(sp, fmt=False)
    sp.set_defaults(func=_cmd_represent)

    sp = sub.add_parser("project", help="gap-averaged canonical measure")
    sp.add_argument("--in", dest="infile", required=True)
    add_common(sp, fmt=False)
    sp.set_defaults(func=_cmd_project)

    sp = sub.add_parser("equiv", help="limit equivalence of two measures")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--statistical", action="store_true",
                    help="sampled fingerprint comparison instead of exact")
    sp.add_argument("--n", type=int, default=500)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=None)
    add_common(sp)
    sp.set_defaults(func=_cmd_equiv)

    sp = sub.add_parser("nu", help="empirical degree distribution CDF")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--sign", choices=("minus", "plus"), required=True)
    add_common(sp)
    sp.set_defaults(func=_cmd_nu)

    sp = sub.add_parser("fingerprint", help="exact induced-density fingerprint")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--max-q", type=int, default=4)
    add_common(sp)
    sp.set_defaults(func=_cmd_fingerprint)

    sp = sub.add_parser("rgo", help="random graph order sample")
    sp.add_argument("--p", type=_fraction, required=True)
    add_common(sp, seed=True, n=True, fmt=False)
    sp.set_defaults(func=_cmd_rgo)

    sp = sub.add_parser("converge", help="degree-distribution convergence table")
    sp.add_argument("--in", dest="infiles", nargs="+", required=True)
    sp.add_argument("--gc", type=_fraction, default=None)
    sp.add_argument("--g", default=None)
    sp.add_argument("--rate", default=None)
    sp.add_argument("--threshold", type=float, default=0.05)
    add_common(sp)
    sp.set_defaults(func=_cmd_converge)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PoslimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report and exit 1
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
