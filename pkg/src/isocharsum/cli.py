"""Command-line front end.

Every corpus command streams one JSON object per line (or CSV rows) in
deterministic corpus order and finishes with a summary.  Exit codes:
0 success, 1 usage or configuration error, 2 a checked identity failed,
3 an internal invariant was breached.
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from math import gcd
from multiprocessing import Pool

from ._numbers import primes_between
from .charsum import (
    LAMBDA_FORMS,
    charsum_bruteforce,
    charsum_compact,
    distinct_values,
    lambda_sum,
    lambda_sum_general,
    make_context,
)
from .classnum import class_number, dirichlet_sum, mr_two_isogeny_sum, power_residue_sum
from .errors import BadReduction, CharsumError, CongruenceViolated, InternalError
from .families import ROWS, corpus_generate, family_closed_form, family_instance, rows_for_degrees, search_instances
from .finite_field import field_make
from .formal import normalization_constant
from .velu import velu_from_kernel, verify_exact_sequence, verify_frobenius_factorization

EXIT_OK, EXIT_CONFIG, EXIT_FAILED, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_M = (2, 3, 4, 5, 6, 8, 10)
MIN_P = 5


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    pmax: int = 50
    m_list: tuple = DEFAULT_M
    alpha_cap: int = 50
    search_cap: int = 3
    precision: int = 12
    ext: int = 1
    output: str = "-"
    format: str = "json"
    jobs: int = 1
    p: int = None
    alpha: int = None
    beta: int = None
    a: int = 0
    b: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.pmax < MIN_P:
            raise ConfigError(f"--pmax must be at least {MIN_P}")
        if any(m < 2 for m in self.m_list):
            raise ConfigError("every m must be at least 2")
        if self.precision < 6:
            raise ConfigError("--precision must be at least 6")
        if self.ext < 1:
            raise ConfigError("--ext must be positive")
        if self.jobs < 1:
            raise ConfigError("--jobs must be positive")


# -- corpus ------------------------------------------------------------------


def corpus(cfg, family_only=False):
    """Work items and skip records, in deterministic order.

    Items are plain tuples so they pickle cheaply: ("row", name, p, alpha, beta)
    for family rows and ("search", m, p, beta, gamma) for searched curves.
    """
    primes = primes_between(MIN_P, cfg.pmax)
    rows = rows_for_degrees(cfg.m_list)
    searched = [] if family_only else sorted({m for m in cfg.m_list if m not in {ROWS[r].m for r in ROWS}})
    for p in primes:
        for m in sorted(set(cfg.m_list)):
            if gcd(p, m) != 1:
                yield {"kind": "skip", "p": p, "m": m, "reason": "gcd(p, m) != 1"}
        for inst in corpus_generate([p], rows, cfg.alpha_cap):
            ps = inst.params
            beta = int(ps["beta"]) if ROWS[inst.row].two_params else None
            yield ("row", inst.row, p, int(ps["alpha"]), beta)
        for m in searched:
            if gcd(p, m) != 1:
                continue
            for inst in search_instances(field_make(p), m, cfg.search_cap):
                yield ("search", m, p, int(inst.params["beta"]), int(inst.params["gamma"]))


def build(item):
    """(label fields, curve, P, m, family instance or None) for a work item."""
    kind, tag, p, u, v = item
    F = field_make(p)
    if kind == "row":
        inst = family_instance(tag, F, u, v)
        params = {k: int(x) for k, x in inst.params.items()}
        return {"row": tag, "m": inst.m, "p": p, "params": params}, inst.curve, inst.P, inst.m, inst
    from .families import kubert_curve

    E = kubert_curve(F, u, v)
    return {"row": f"search-{tag}", "m": tag, "p": p, "params": {"beta": u, "gamma": v}}, E, E.point(0, 0), tag, None


def _j(x):
    return x.to_json()


def theorem_record(item, cfg):
    rec, E, P, m, _ = build(item)
    phi = velu_from_kernel(E, P, m)
    ctx = make_context(phi)
    brute = charsum_bruteforce(ctx).value
    compact = charsum_compact(ctx).value
    general = lambda_sum_general(phi.kernel, ctx.zeta)
    tabulated = lambda_sum(phi.kernel, ctx.zeta) if m in LAMBDA_FORMS else general
    rec.update(
        d=ctx.d,
        zeta=_j(ctx.zeta),
        brute=_j(brute),
        compact=_j(compact),
        lambda_form=LAMBDA_FORMS[m][0] if m in LAMBDA_FORMS else "general",
        table=_j(tabulated),
        general=_j(general),
        theorem_ok=brute == compact,
        table_ok=tabulated == compact,
        general_ok=general == compact,
    )
    rec["ok"] = rec["theorem_ok"] and rec["table_ok"]
    return rec


def family_record(item, cfg):
    rec, E, P, m, inst = build(item)
    phi = velu_from_kernel(E, P, m)
    ctx = make_context(phi)
    brute = charsum_bruteforce(ctx).value
    compact = charsum_compact(ctx).value
    closed = family_closed_form(inst, ctx.zeta)
    rec.update(
        closed_form=inst.closed_form,
        x_2P=_j(phi.kernel[2].x) if m > 2 else None,
        brute=_j(brute),
        compact=_j(compact),
        closed=_j(closed),
        equal=brute == compact == closed,
    )
    return rec


def structure_record(item, cfg):
    rec, E, P, m, _ = build(item)
    phi = velu_from_kernel(E, P, m)
    ctx = make_context(phi)
    report = verify_exact_sequence(phi, ctx.phi_c, ctx.domain_points, ctx.codomain_points)
    fact = {str(e): verify_frobenius_factorization(phi, ctx.phi_c, e) for e in range(1, cfg.ext + 1)}
    cv = normalization_constant(phi, cfg.precision)
    cc = normalization_constant(ctx.phi_c, cfg.precision)
    rec.update(
        exactness=report.to_json(),
        factorization=fact,
        c_V=_j(cv.c),
        c_complement=_j(cc.c),
    )
    rec["ok"] = report.ok and all(fact.values()) and cv.c == 1 and cc.c == 1
    return rec


def normalization_record(item, cfg):
    rec, E, P, m, _ = build(item)
    phi = velu_from_kernel(E, P, m)
    ctx = make_context(phi)
    cv = normalization_constant(phi, cfg.precision)
    cc = normalization_constant(ctx.phi_c, cfg.precision)
    rec.update(c_V=cv.to_json(), c_complement=cc.to_json(), ok=cv.c == 1 and cc.c == 1)
    return rec


CORPUS_COMMANDS = {
    "verify-theorem": (theorem_record, False),
    "verify-family": (family_record, True),
    "verify-structure": (structure_record, False),
    "normalization-check": (normalization_record, False),
}


def _work(args):
    fn, item, cfg = args
    try:
        return fn(item, cfg)
    except InternalError as exc:
        return {"kind": "internal-error", "item": list(item), "error": f"{type(exc).__name__}: {exc}"}


def _records(fn, cfg, family_only):
    """Records in corpus order, computed with cfg.jobs worker processes."""
    stream = corpus(cfg, family_only)
    if cfg.jobs == 1:
        for entry in stream:
            yield entry if isinstance(entry, dict) else _work((fn, entry, cfg))
        return
    entries = list(stream)
    tasks = [(fn, e, cfg) for e in entries if not isinstance(e, dict)]
    with Pool(cfg.jobs) as pool:
        results = iter(pool.imap(_work, tasks, chunksize=4))
        for entry in entries:
            yield entry if isinstance(entry, dict) else next(results)


def run_corpus(cfg, emit):
    fn, family_only = CORPUS_COMMANDS[cfg.command]
    counts = {"instances": 0, "failures": 0, "skipped": 0, "internal_errors": 0}
    extra = {}
    for rec in _records(fn, cfg, family_only):
        kind = rec.get("kind")
        if kind == "skip":
            counts["skipped"] += 1
        elif kind == "internal-error":
            counts["internal_errors"] += 1
        else:
            counts["instances"] += 1
            counts["failures"] += not rec.get("ok", rec.get("equal"))
            for key in ("theorem_ok", "table_ok", "general_ok"):
                if key in rec and not rec[key]:
                    extra[key.replace("_ok", "_failures")] = extra.get(key.replace("_ok", "_failures"), 0) + 1
        emit(rec)
    summary = {"kind": "summary", "command": cfg.command, "pmax": cfg.pmax, "m": list(cfg.m_list), **counts}
    summary.update(sorted(extra.items()))
    summary["ok"] = counts["failures"] == 0 and counts["internal_errors"] == 0
    emit(summary)
    if counts["internal_errors"]:
        return EXIT_INTERNAL
    return EXIT_OK if summary["ok"] else EXIT_FAILED


# -- single instances ----------------------------------------------------------


def _single(cfg):
    if cfg.p is None or cfg.alpha is None:
        raise ConfigError("--p and --alpha are required")
    if len(cfg.m_list) != 1:
        raise ConfigError("give exactly one --m (a family row: 2, 3, 4, 4', 5, 6, 8, 10)")
    row = cfg.extra.get("row") or str(cfg.m_list[0])
    if row not in ROWS:
        raise ConfigError(f"no family row {row!r}")
    return family_instance(row, field_make(cfg.p), cfg.alpha, cfg.beta)


def run_charsum(cfg, emit):
    inst = _single(cfg)
    phi = velu_from_kernel(inst.curve, inst.P, inst.m)
    ctx = make_context(phi)
    brute = charsum_bruteforce(ctx).value
    compact = charsum_compact(ctx).value
    closed = family_closed_form(inst, ctx.zeta)
    lam = lambda_sum(phi.kernel, ctx.zeta) if inst.m in LAMBDA_FORMS else None
    rec = {
        "instance": inst.to_json(),
        "m": inst.m,
        "d": ctx.d,
        "zeta": _j(ctx.zeta),
        "brute": _j(brute),
        "compact": _j(compact),
        "lambda": None if lam is None else _j(lam),
        "general": _j(lambda_sum_general(phi.kernel, ctx.zeta)),
        "closed": _j(closed),
        "distinct_values": sorted(_j(v) for v in distinct_values(phi, ctx.zeta)),
        "equal": brute == compact == closed and lam in (None, compact),
    }
    emit(rec)
    return EXIT_OK if rec["equal"] else EXIT_FAILED


def run_isogeny(cfg, emit):
    inst = _single(cfg)
    phi = velu_from_kernel(inst.curve, inst.P, inst.m)
    ctx = make_context(phi)
    emit({"instance": inst.to_json(), "isogeny": phi.to_json(), "complement": ctx.phi_c.to_json()})
    return EXIT_OK


# -- characteristic-zero sweeps ------------------------------------------------


def run_dirichlet(cfg, emit):
    bad = 0
    for p in primes_between(MIN_P, cfg.pmax):
        cd = class_number(p)
        S = dirichlet_sum(p)
        ok = S == -p * cd.h_star
        bad += not ok
        emit({"p": p, "S": S, "h_p": cd.h_p, "h_star": cd.h_star, "ok": ok})
    emit({"kind": "summary", "command": "dirichlet", "pmax": cfg.pmax, "failures": bad, "ok": not bad})
    return EXIT_FAILED if bad else EXIT_OK


def run_mr_sum(cfg, emit):
    bad = 0
    worst = 0
    for p in primes_between(MIN_P, cfg.pmax):
        try:
            r = mr_two_isogeny_sum(cfg.a, cfg.b, p, cross_check=cfg.extra.get("cross_check", False))
        except BadReduction:
            emit({"kind": "skip", "p": p, "reason": "bad reduction"})
            continue
        bad += not r.divisible
        worst = max(worst, r.defect)
        emit({"p": p, "S": r.S, "quotient": str(r.quotient), "h_star": r.h_star, "defect": str(r.defect)})
    emit(
        {
            "kind": "summary",
            "command": "mr-sum",
            "a": cfg.a,
            "b": cfg.b,
            "pmax": cfg.pmax,
            "not_divisible": bad,
            "max_defect": str(worst),
            "ok": not bad,
        }
    )
    return EXIT_FAILED if bad else EXIT_OK


def run_power_sum(cfg, emit):
    bad = 0
    for m in cfg.m_list:
        if m <= 2 or m % 2 == 0:
            raise ConfigError("power-sum needs odd m > 2")
        for p in primes_between(MIN_P, cfg.pmax):
            try:
                s = power_residue_sum(p, m)
            except CongruenceViolated:
                continue
            bad += not s.is_zero()
            emit({"p": p, "m": m, "sum": list(s.coeffs), "ok": s.is_zero()})
    emit({"kind": "summary", "command": "power-sum", "pmax": cfg.pmax, "failures": bad, "ok": not bad})
    return EXIT_FAILED if bad else EXIT_OK


COMMANDS = {
    **{name: run_corpus for name in CORPUS_COMMANDS},
    "charsum": run_charsum,
    "isogeny": run_isogeny,
    "dirichlet": run_dirichlet,
    "mr-sum": run_mr_sum,
    "power-sum": run_power_sum,
}


# -- argument handling -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _m_list(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if part == "4'":
            out.append(4)
            continue
        try:
            out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad degree {part!r}")
    return tuple(out)


def make_parser():
    parser = _Parser(prog="isocharsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--pmax", type=int, default=50)
        sp.add_argument("--m", type=_m_list, default=None, help="comma-separated degrees")
        sp.add_argument("--alpha-cap", type=int, default=50)
        sp.add_argument("--search-cap", type=int, default=3)
        sp.add_argument("--ext", type=int, default=None, help="check factorization over F_{p^e}, e <= EXT")
        sp.add_argument("--precision", type=int, default=12)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default="-")
        sp.add_argument("--jobs", type=int, default=None)
        sp.add_argument("--p", type=int)
        sp.add_argument("--alpha", type=int)
        sp.add_argument("--beta", type=int)
        sp.add_argument("--row", help="family row name, e.g. 4'")
        sp.add_argument("--a", type=int, default=0)
        sp.add_argument("--b", type=int, default=1)
        sp.add_argument("--cross-check", action="store_true")
    return parser


def config_from_args(ns):
    if ns.m is not None:
        m_list = ns.m
    elif ns.command == "power-sum":
        m_list = (3, 5, 7)
    else:
        m_list = DEFAULT_M
    if ns.ext is not None:
        ext = ns.ext
    else:
        ext = 2 if ns.command == "verify-structure" else 1
    jobs = ns.jobs if ns.jobs is not None else (os.cpu_count() or 1)
    return RunConfig(
        command=ns.command,
        pmax=ns.pmax,
        m_list=m_list,
        alpha_cap=ns.alpha_cap,
        search_cap=ns.search_cap,
        precision=ns.precision,
        ext=ext,
        output=ns.out,
        format=ns.format,
        jobs=jobs,
        p=ns.p,
        alpha=ns.alpha,
        beta=ns.beta,
        a=ns.a,
        b=ns.b,
        extra={"row": ns.row, "cross_check": ns.cross_check},
    )


class Emitter:
    """Writes records as JSON lines or CSV; CSV headers follow the first record."""

    def __init__(self, stream, fmt):
        self.stream = stream
        self.fmt = fmt
        self._writer = None
        self._fields = None

    def __call__(self, rec):
        if self.fmt == "json":
            self.stream.write(json.dumps(rec, separators=(",", ":")) + "\n")
            return
        flat = {k: json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v for k, v in rec.items()}
        if rec.get("kind") in ("summary", "skip", "internal-error"):
            self.stream.write("# " + json.dumps(rec, separators=(",", ":")) + "\n")
            return
        if self._writer is None:
            self._fields = list(flat)
            self._writer = csv.DictWriter(self.stream, self._fields, extrasaction="ignore", lineterminator="\n")
            self._writer.writeheader()
        self._writer.writerow(flat)


def main(argv=None):
    ns = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        cfg.validate()
    except ConfigError as exc:
        print(f"isocharsum: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    stream = sys.stdout if cfg.output == "-" else open(cfg.output, "w", newline="")
    try:
        return COMMANDS[cfg.command](cfg, Emitter(stream, cfg.format))
    except ConfigError as exc:
        print(f"isocharsum: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InternalError as exc:
        print(f"isocharsum: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CharsumError as exc:
        print(f"isocharsum: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    finally:
        if stream is not sys.stdout:
            stream.close()
        else:
            stream.flush()


if __name__ == "__main__":
    sys.exit(main())
