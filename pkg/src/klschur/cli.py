"""Command-line interface: block decomposition matrices, KL lookups, self test.

Exit codes: 0 success, 1 internal invariant violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .coxeter import ParabolicSubset, from_word, parse_word
from .decomp import InvariantViolation, block_setup, check_cartan, check_decomp, dc_block_matrices
from .hecke import (
    IntervalKL, append_cache_lines, hk_inverse_kl, hk_inverse_parabolic_n, hk_kl_poly,
    hk_parabolic_n,
)
from .laurent import parse
from .multipartitions import (
    Block, Charge, Multipartition, mp_choose_m, mp_residue_content, multipartitions,
    parse_block, validate_m,
)

__all__ = [
    "JobConfig", "UsageError", "main", "main_exit", "cli_decomp", "cli_kl", "cli_selftest",
    "record_to_json", "record_from_json", "blocks_for_n", "compute_block",
]


class UsageError(ValueError):
    pass


class JobConfig:
    """Validated decomp job: e, s, the block list, m and the output format."""

    def __init__(self, e, s, block=None, n=None, m="auto", fmt="json", output=None, workers=1):
        if e is None or e < 2:
            raise UsageError("--e must be an integer > 1")
        if not s:
            raise UsageError("--s must list at least one residue")
        if (block is None) == (n is None):
            raise UsageError("give exactly one of --block and --n")
        if n is not None and n < 0:
            raise UsageError("--n must be nonnegative")
        if fmt not in ("json", "csv", "text"):
            raise UsageError("--format must be json, csv or text")
        if workers < 1:
            raise UsageError("--workers must be positive")
        self.charge = Charge(tuple(s), e)
        self.e = e
        self.block = parse_block(block, e) if isinstance(block, str) else block
        self.n = n
        self.m = m
        self.fmt = fmt
        self.output = output
        self.workers = workers
        size = self.block.size() if self.block is not None else n
        if m != "auto":
            problems = validate_m(self.charge, tuple(m), size)
            if problems:
                raise UsageError("invalid m: " + "; ".join(problems))

    def blocks(self):
        if self.block is not None:
            return [self.block]
        return blocks_for_n(self.charge, self.n)


def blocks_for_n(chg, n):
    return sorted({mp_residue_content(lam, chg) for lam in multipartitions(n, chg.level)})


def compute_block(e, s, content, m, cache_dir=None):
    """One block record plus new cache lines (runs in worker processes)."""
    chg = Charge(tuple(s), e)
    d = Block(dict(content), e)
    mm = mp_choose_m(chg, d.size()) if m == "auto" else tuple(m)
    kl = None
    if cache_dir:
        _, _, reps, mu, _ = block_setup(chg, d, mm)
        kl = IntervalKL(reps[0].rank, mu, cache_dir=cache_dir)
    D, C = dc_block_matrices(chg, d, mm, kl=kl)
    bad = check_decomp(D) + check_cartan(C)
    if bad:
        raise InvariantViolation("block %s: %s" % (d, "; ".join(bad)))
    record = {
        "e": e,
        "s": list(chg.s),
        "block": str(d),
        "m": list(mm),
        "labels": [lam.to_list() for lam in D.labels],
        "D": [[str(p) for p in row] for row in D.entries],
        "C": [[str(p) for p in row] for row in C.entries],
    }
    lines = kl.drain() if kl is not None else []
    return record, (kl.cache_path if kl is not None else None), lines


def record_to_json(record):
    return json.dumps(record, separators=(", ", ": "))


def record_from_json(text):
    rec = json.loads(text)
    for key in ("e", "s", "block", "m", "labels", "D", "C"):
        if key not in rec:
            raise ValueError("record lacks %r" % key)
    for key in ("D", "C"):
        for row in rec[key]:
            for p in row:
                parse(p)
    return rec


def _label(lab):
    return str(Multipartition(tuple(tuple(c) for c in lab)))


def render(records, fmt):
    if fmt == "json":
        return "[\n" + ",\n".join("  " + record_to_json(r) for r in records) + "\n]\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["e", "s", "block", "m", "matrix", "row", "col", "entry"])
        for r in records:
            labs = [_label(lab) for lab in r["labels"]]
            for key in ("D", "C"):
                for i, row in enumerate(r[key]):
                    for j, p in enumerate(row):
                        wr.writerow([r["e"], ",".join(map(str, r["s"])), r["block"],
                                     ",".join(map(str, r["m"])), key, labs[i], labs[j], p])
        return buf.getvalue()
    out = []
    for r in records:
        labs = [_label(lab) for lab in r["labels"]]
        out.append("e=%d s=%s block=%s m=%s" % (
            r["e"], ",".join(map(str, r["s"])), r["block"], ",".join(map(str, r["m"]))))
        for key in ("D", "C"):
            out.append(key + ":")
            cells = [[""] + labs] + [[labs[i]] + row for i, row in enumerate(r[key])]
            widths = [max(len(row[k]) for row in cells) for k in range(len(cells[0]))]
            for row in cells:
                out.append("  " + "  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip())
        out.append("")
    return "\n".join(out)


def cli_decomp(cfg):
    """Records for every requested block, in deterministic order."""
    cache_dir = os.environ.get("KL_CACHE_DIR") or None
    jobs = [(cfg.e, cfg.charge.s, d.content, cfg.m, cache_dir) for d in cfg.blocks()]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(compute_block, *zip(*jobs)))
    else:
        results = [compute_block(*job) for job in jobs]
    records = []
    for record, path, lines in results:
        if path:
            append_cache_lines(path, lines)
        records.append(record)
    return records


_FAMILIES = ("h", "hinv", "n", "ninv")


def cli_kl(rank, x, y, family, f=None):
    """The requested polynomial as a canonical string."""
    if family not in _FAMILIES:
        raise UsageError("--family must be one of " + ", ".join(_FAMILIES))
    try:
        xe = from_word(rank, parse_word(x))
        ye = from_word(rank, parse_word(y))
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    if family == "h":
        return str(hk_kl_poly(xe, ye))
    if family == "hinv":
        return str(hk_inverse_kl(xe, ye))
    fs = ParabolicSubset(rank, parse_word(f or ""))
    if family == "n":
        return str(hk_parabolic_n(xe, ye, fs))
    return str(hk_inverse_parabolic_n(xe, ye, fs))


def cli_selftest(depth="small"):
    from . import selftest
    return selftest.run(depth)


def _parse_m(text):
    if text == "auto":
        return "auto"
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError("--m must be 'auto' or a comma list of integers") from None


def _parse_s(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError("--s must be a comma list of integers") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="klschur", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decomp", help="graded decomposition and Cartan matrices of blocks")
    d.add_argument("--e", type=int, required=True)
    d.add_argument("--s", required=True, help="charge residues, comma separated")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, help="all blocks of multipartitions of n")
    g.add_argument("--block", help="residue content, e.g. 0:1,1:2")
    d.add_argument("--m", default="auto", help="'auto' or a comma list")
    d.add_argument("--format", default="json", choices=["json", "csv", "text"])
    d.add_argument("--output", help="output file (default: stdout)")
    d.add_argument("--workers", type=int, default=1)

    k = sub.add_parser("kl", help="Kazhdan-Lusztig polynomial lookup")
    k.add_argument("--rank", type=int, required=True)
    k.add_argument("--x", required=True, help="word, e.g. 1,0,2 (empty for identity)")
    k.add_argument("--y", required=True)
    k.add_argument("--family", required=True, choices=list(_FAMILIES))
    k.add_argument("--f", default="", help="parabolic generators, comma separated")

    t = sub.add_parser("selftest", help="run the invariant suites")
    t.add_argument("--depth", default="small", choices=["small", "full"])
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command == "decomp":
            cfg = JobConfig(args.e, _parse_s(args.s), block=args.block, n=args.n,
                            m=_parse_m(args.m), fmt=args.format, output=args.output,
                            workers=args.workers)
            text = render(cli_decomp(cfg), cfg.fmt)
            if cfg.output:
                with open(cfg.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "kl":
            if args.rank < 1:
                raise UsageError("--rank must be positive")
            print(cli_kl(args.rank, args.x, args.y, args.family, args.f))
            return 0
        report = cli_selftest(args.depth)
        print(json.dumps(report, indent=2))
        return 0 if report["ok"] else 1
    except InvariantViolation as exc:
        print("invariant violation: %s" % exc, file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
