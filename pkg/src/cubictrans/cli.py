"""Command-line front end.

Exit codes: 0 success, 2 optimizer did not converge (output still written),
64 usage error, 65 data error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .baseline import Pareto
from .datafile import DataFileError, check_summary, read_values
from .errors import ConstructionError, DomainError
from .inference import Dataset, FitConfig, compare, fit, fitted_distribution
from .kernels import MODIFIED_SET, UNMODIFIED_SET, get_family
from .transmute import TransmutedDistribution
from .validity import Axis, region_scan

EXIT_OK = 0
EXIT_NONCONVERGED = 2
EXIT_USAGE = 64
EXIT_DATA = 65

FAMILY_SETS = {
    "unmodified": UNMODIFIED_SET,
    "modified": MODIFIED_SET,
    "all": tuple(dict.fromkeys(UNMODIFIED_SET + MODIFIED_SET)),
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _family(name):
    try:
        return get_family(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _floats(text, what):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad {what}: {text!r}") from None


def _load(path) -> Dataset:
    try:
        return Dataset(read_values(path))
    except (DataFileError, DomainError) as exc:
        raise DataError(f"{path}: {exc}") from None


def _baseline(spec: str):
    name, _, rest = spec.partition(":")
    if name.strip().lower() != "pareto":
        raise UsageError(f"unsupported baseline {name!r} (only pareto)")
    vals = _floats(rest, "baseline parameters")
    if len(vals) != 2:
        raise UsageError("pareto baseline takes x0,alpha")
    try:
        return Pareto(*vals)
    except ConstructionError as exc:
        raise UsageError(str(exc)) from None


def _config(args) -> FitConfig:
    if args.starts is not None and args.starts < 1:
        raise UsageError("--starts must be positive")
    return FitConfig() if args.starts is None else FitConfig(starts=args.starts)


def cmd_fit(args, out) -> int:
    fam = _family(args.family)
    data = _load(args.data)
    try:
        res = fit(fam, data, _config(args))
    except DomainError as exc:
        raise DataError(str(exc)) from None
    out.write(res.to_json(indent=2) + "\n")
    return EXIT_OK if res.converged else EXIT_NONCONVERGED


def cmd_compare(args, out) -> int:
    data = _load(args.data)
    try:
        table = compare(data, FAMILY_SETS[args.set], _config(args))
    except DomainError as exc:
        raise DataError(str(exc)) from None
    out.write(table.to_tsv())
    return EXIT_OK if all(r.converged for r in table.rows) else EXIT_NONCONVERGED


def cmd_scan(args, out) -> int:
    fam = _family(args.family)
    try:
        x = Axis.parse(args.x)
        y = Axis.parse(args.y) if args.y is not None else None
        fixed = {}
        for item in args.fixed or []:
            i, _, v = item.partition("=")
            fixed[int(i) - 1] = float(v)
        scan = region_scan(fam, x, y, fixed)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    out.write(scan.to_csv())
    return EXIT_OK


def cmd_curves(args, out) -> int:
    fams = [_family(f) for f in args.families.split(",") if f.strip()]
    if not fams:
        raise UsageError("--families is empty")
    data = _load(args.data)
    lo = data.x0 if args.lo is None else args.lo
    hi = float(np.percentile(data.values, 99.5)) if args.hi is None else args.hi
    if not hi > lo or args.points < 2:
        raise UsageError("curve grid needs --to > --from and at least 2 points")
    grid = np.linspace(lo, hi, args.points)
    cols, names, converged = [], [], True
    for fam in fams:
        try:
            res = fit(fam, data, _config(args))
        except DomainError as exc:
            raise DataError(str(exc)) from None
        converged &= res.converged
        dist = fitted_distribution(res)
        cols += [np.atleast_1d(dist.cdf(grid)), np.atleast_1d(dist.pdf(grid))]
        names += [f"{fam.family_id}_cdf", f"{fam.family_id}_pdf"]
    out.write(",".join(["x", *names]) + "\n")
    for i, xi in enumerate(grid):
        out.write(",".join(f"{v:.12g}" for v in [xi, *(c[i] for c in cols)]) + "\n")

    bins = args.bins or math.ceil(math.sqrt(data.n))
    counts, edges = np.histogram(data.values, bins=bins)
    density = counts / (data.n * np.diff(edges))
    hist_lines = ["bin_lo,bin_hi,count,density"] + [
        f"{a:.12g},{b:.12g},{c},{d:.12g}"
        for a, b, c, d in zip(edges[:-1], edges[1:], counts, density)]
    if args.hist_out:
        with open(args.hist_out, "w") as fh:
            fh.write("\n".join(hist_lines) + "\n")
    else:
        out.write("\n# histogram\n" + "\n".join(hist_lines) + "\n")
    return EXIT_OK if converged else EXIT_NONCONVERGED


def cmd_sample(args, out) -> int:
    fam = _family(args.family)
    params = _floats(args.params or "", "--params")
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    base = _baseline(args.baseline)
    try:
        dist = (TransmutedDistribution.unchecked(base, fam, params) if args.unchecked
                else TransmutedDistribution(base, fam, params))
    except ConstructionError as exc:
        raise UsageError(str(exc)) from None
    draws = dist.sample(args.n, args.seed)
    out.write("".join(f"{v:.12g}\n" for v in draws))
    return EXIT_OK


def cmd_check_data(args, out) -> int:
    try:
        values = read_values(args.data)
    except DataFileError as exc:
        raise DataError(f"{args.data}: {exc}") from None
    checks = check_summary(values)
    for c in checks:
        out.write(f"{c.statistic}\t{c.observed:.6g}\t{c.expected:.6g}\t"
                  f"{'ok' if c.ok else 'MISMATCH'}\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubictrans", description="Cubic transmutation toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_out(sp):
        sp.add_argument("--out", help="write to FILE instead of standard output")
        return sp

    s = with_out(sub.add_parser("fit", help="fit one family, print JSON"))
    s.add_argument("data")
    s.add_argument("--family", required=True)
    s.add_argument("--starts", type=int)
    s.set_defaults(func=cmd_fit)

    s = with_out(sub.add_parser("compare", help="fit a family set, print ranked TSV"))
    s.add_argument("data")
    s.add_argument("--set", choices=sorted(FAMILY_SETS), default="modified")
    s.add_argument("--starts", type=int)
    s.set_defaults(func=cmd_compare)

    s = with_out(sub.add_parser("scan", help="kernel validity over a parameter grid, CSV"))
    s.add_argument("family")
    s.add_argument("--x", required=True, help="lo:hi:step for the first scanned parameter")
    s.add_argument("--y", help="lo:hi:step for the second parameter")
    s.add_argument("--fixed", action="append", metavar="I=V",
                   help="pin parameter I (1-based) to V")
    s.set_defaults(func=cmd_scan)

    s = with_out(sub.add_parser("curves", help="fitted cdf/pdf on a grid, CSV"))
    s.add_argument("data")
    s.add_argument("--families", required=True)
    s.add_argument("--points", type=int, default=200)
    s.add_argument("--from", dest="lo", type=float)
    s.add_argument("--to", dest="hi", type=float)
    s.add_argument("--bins", type=int)
    s.add_argument("--hist-out")
    s.add_argument("--starts", type=int)
    s.set_defaults(func=cmd_curves)

    s = with_out(sub.add_parser("sample", help="draw from a transmuted distribution"))
    s.add_argument("family")
    s.add_argument("--params", default="")
    s.add_argument("--baseline", default="pareto:1,1")
    s.add_argument("-n", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--unchecked", action="store_true")
    s.set_defaults(func=cmd_sample)

    s = with_out(sub.add_parser("check-data", help="verify a Floyd River data file"))
    s.add_argument("data")
    s.set_defaults(func=cmd_check_data)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"cubictrans: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"cubictrans: {exc}", file=sys.stderr)
        return EXIT_DATA
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
