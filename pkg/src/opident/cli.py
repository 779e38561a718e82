"""Command-line front end.

    opident normalize --ctx qplane  < expr.txt
    opident verify --family eq1 --n 0..8
    opident matrix --family eq1 --n 3 --power 1
    opident profile --ctx classical  <<< "(x^2*Px - 2*x)^2"
    opident fit5 --n 0..5

``--format structured`` emits one JSON record per line.  Exit status is 0
when everything passed, 1 on a failed verification, 2 on usage, parse or
context errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import OpIdentError
from .exprlang import monomial_text, parse, print_expr
from .identities import Family, IdentitySpec, fit_relations5, lhs_power, verify_identity
from .opalg import RuleSet, make_context
from .polyrep import derivative_profile, matrix_of

DEFAULT_VARS = {
    RuleSet.CLASSICAL: (1, 0),
    RuleSet.CLASSICAL_GRASSMANN: (1, 1),
    RuleSet.QLINE: (1, 0),
    RuleSet.QUANTUM_PLANE: (2, 0),
    RuleSet.QUANTUM_HYPERPLANE: (3, 0),
}


@dataclass
class RunConfig:
    command: str
    rule_set: RuleSet = RuleSet.CLASSICAL
    n_boson: Optional[int] = None
    n_grassmann: Optional[int] = None
    n_range: tuple = (0, 0)
    n_vars: Optional[int] = None
    grassmann: bool = False
    family: Optional[Family] = None
    power: Optional[int] = None
    fmt: str = "text"
    q: Optional[Fraction] = None
    timing: bool = False
    jobs: int = 1

    def context(self):
        nb, ng = DEFAULT_VARS[self.rule_set]
        return make_context(nb if self.n_boson is None else self.n_boson,
                            ng if self.n_grassmann is None else self.n_grassmann,
                            self.rule_set)

    def ns(self):
        return range(self.n_range[0], self.n_range[1] + 1)


def parse_range(text: str) -> tuple:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n-range {text!r}; use N or A..B")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative n-range {text!r}")
    return lo, hi


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opident", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ctx=True):
        sp.add_argument("--format", dest="fmt", choices=("text", "structured"), default="text")
        sp.add_argument("--q", type=_rational, default=None,
                        help="also evaluate at this rational q")
        if ctx:
            sp.add_argument("--ctx", default="classical", choices=[r.value for r in RuleSet])
            sp.add_argument("--bosons", type=int, default=None, help="number of ordinary variables")
            sp.add_argument("--gvars", type=int, default=None, help="number of Grassmann variables")

    def family_args(sp, required):
        sp.add_argument("--family", choices=[f.value for f in Family], required=required)
        sp.add_argument("--n", type=parse_range, default=(0, 0), help="N or inclusive A..B")
        sp.add_argument("--vars", dest="n_vars", type=int, default=None,
                        help="variable count for eq3 / hyperplane")
        sp.add_argument("--grassmann", action="store_true", help="Grassmann variant of eq2")

    sp = sub.add_parser("normalize", help="normal-order expressions read from stdin, one per line")
    common(sp)

    sp = sub.add_parser("verify", help="verify identity families")
    common(sp, ctx=False)
    family_args(sp, required=True)
    sp.add_argument("--timing", action="store_true", help="include elapsed time per record")
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("matrix", help="matrix on P_n of a stdin expression or a family power")
    common(sp)
    family_args(sp, required=False)
    sp.add_argument("--power", type=int, default=None, help="power of the raising operator (default 1)")

    sp = sub.add_parser("profile", help="derivative orders present in an expression")
    common(sp)
    family_args(sp, required=False)
    sp.add_argument("--power", type=int, default=None)

    sp = sub.add_parser("fit5", help="fit the q-sl2 relation factors")
    common(sp, ctx=False)
    sp.add_argument("--n", type=parse_range, default=(0, 0))
    return p


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.fmt, q=args.q)
    if hasattr(args, "ctx"):
        cfg.rule_set = RuleSet(args.ctx)
        cfg.n_boson, cfg.n_grassmann = args.bosons, args.gvars
    cfg.n_range = getattr(args, "n", (0, 0))
    if getattr(args, "family", None):
        cfg.family = Family(args.family)
    cfg.n_vars = getattr(args, "n_vars", None)
    cfg.grassmann = getattr(args, "grassmann", False)
    cfg.power = getattr(args, "power", None)
    cfg.timing = getattr(args, "timing", False)
    cfg.jobs = getattr(args, "jobs", 1)
    return cfg


# -- records --------------------------------------------------------------------

def _spec(cfg: RunConfig, n: int) -> IdentitySpec:
    n_vars = cfg.n_vars
    if cfg.family in (Family.EQ1, Family.EQ4, Family.EQ2, Family.EQ7):
        n_vars = None
    elif cfg.family is Family.HYPERPLANE and n_vars is None:
        n_vars = 3
    return IdentitySpec(cfg.family, n, n_vars, cfg.grassmann)


def verify_record(spec: IdentitySpec, q: Optional[Fraction] = None, timing: bool = False) -> dict:
    rep = verify_identity(spec)
    rec = {
        "command": "verify",
        "family": spec.family.value,
        "n": spec.n,
        "vars": spec.n_vars,
        "grassmann": spec.grassmann,
        "equal": rep.equal,
        "term_count": rep.term_count,
        "lhs": print_expr(rep.lhs_normal),
        "rhs": print_expr(rep.rhs_normal) if rep.rhs_normal is not None else None,
        "checks": rep.checks,
        "notes": rep.notes,
        "witness": None,
    }
    if rep.witness is not None:
        mono, a, b = rep.witness
        rec["witness"] = {"monomial": mono or "1", "lhs": a.to_text(), "rhs": b.to_text()}
    if q is not None:
        rec["q"] = str(q)
        if rep.rhs_normal is not None:
            rec["equal_at_q"] = rep.lhs_normal.eval_at(q) == rep.rhs_normal.eval_at(q)
    if timing:
        rec["elapsed"] = round(rep.elapsed, 6)
    rec["passed"] = rep.equal and all(rep.checks.values())
    return rec


def _verify_job(args):
    return verify_record(*args)


def _text_verify(rec: dict) -> str:
    status = "PASS" if rec["passed"] else "FAIL"
    label = f"{rec['family']} n={rec['n']}"
    if rec["family"] in ("eq3", "hyperplane"):
        label += f" vars={rec['vars']}"
    if rec["grassmann"]:
        label += " grassmann"
    line = f"{status} {label} terms={rec['term_count']}"
    if "equal_at_q" in rec:
        line += f" equal_at_q={rec['q']}:{rec['equal_at_q']}"
    if "elapsed" in rec:
        line += f" time={rec['elapsed']:.4f}s"
    line += f"\n  lhs = {rec['lhs']}"
    if rec["witness"]:
        w = rec["witness"]
        line += f"\n  differs at {w['monomial']}: lhs {w['lhs']} vs rhs {w['rhs']}"
    failed = [k for k, v in rec["checks"].items() if not v]
    if failed:
        line += "\n  failed checks: " + ", ".join(failed)
    return line


def _emit(cfg: RunConfig, rec: dict, text: str, out) -> None:
    if cfg.fmt == "structured":
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _stdin_exprs(stdin) -> list:
    return [line.strip() for line in stdin.read().splitlines() if line.strip()]


def _target(cfg: RunConfig, stdin):
    """Expressions named by a family or read from stdin, paired with labels."""
    if cfg.family is not None:
        out = []
        for n in cfg.ns():
            spec = _spec(cfg, n)
            k = 1 if cfg.power is None else cfg.power
            out.append((f"{spec.label()} power={k}", lhs_power(spec, k), n))
        return out
    ctx = cfg.context()
    return [(text, parse(text, ctx).normalize(), cfg.n_range[1]) for text in _stdin_exprs(stdin)]


# -- commands -------------------------------------------------------------------

def run(cfg: RunConfig, stdin=None, out=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    out = sys.stdout if out is None else out
    status = 0

    if cfg.command == "normalize":
        ctx = cfg.context()
        for text in _stdin_exprs(stdin):
            e = parse(text, ctx).normalize()
            rec = {"command": "normalize", "context": str(ctx), "input": text,
                   "normal_form": print_expr(e), "terms": len(e)}
            body = rec["normal_form"]
            if cfg.q is not None:
                rec["q"] = str(cfg.q)
                rec["at_q"] = print_expr(e.eval_at(cfg.q))
                body += f"\n  at q={cfg.q}: {rec['at_q']}"
            _emit(cfg, rec, body, out)
        return 0

    if cfg.command == "verify":
        specs = [_spec(cfg, n) for n in cfg.ns()]
        jobs = [(s, cfg.q, cfg.timing) for s in specs]
        if cfg.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                records = list(pool.map(_verify_job, jobs))
        else:
            records = [_verify_job(j) for j in jobs]
        for rec in records:
            _emit(cfg, rec, _text_verify(rec), out)
            if not rec["passed"]:
                status = 1
        return status

    if cfg.command == "matrix":
        for label, e, n in _target(cfg, stdin):
            m = matrix_of(e, n)
            rec = {"command": "matrix", "input": label, "n": n, "context": str(e.ctx),
                   "basis": [monomial_text(e.ctx, b + (0,) * len(b)) or "1" for b in m.basis],
                   "rows": [[s.to_text() for s in row] for row in m.entries],
                   "nilpotency_index": m.nilpotency_index()}
            text = f"# {label}\n{m.to_text()}\nnilpotency index: {rec['nilpotency_index']}"
            _emit(cfg, rec, text, out)
        return 0

    if cfg.command == "profile":
        for label, e, _ in _target(cfg, stdin):
            orders = sorted(derivative_profile(e))
            rec = {"command": "profile", "input": label, "orders": orders}
            _emit(cfg, rec, f"{label}: {orders}", out)
        return 0

    if cfg.command == "fit5":
        for n in cfg.ns():
            fit = fit_relations5(n)
            rec = {
                "command": "fit5", "n": n, "relations_hold": fit.relations_hold,
                "factors": {k: v.to_text() for k, v in sorted(fit.factors.items())},
                "proportionality": {k: (v.to_text() if v is not None else None)
                                    for k, v in sorted(fit.proportionality.items())},
                "classical_limit_ok": fit.classical_limit_ok,
                "residuals": {k: print_expr(v) for k, v in sorted(fit.residuals.items())},
                "notes": fit.notes,
            }
            if cfg.q is not None and fit.factors:
                rec["q"] = str(cfg.q)
                rec["factors_at_q"] = {k: str(v.eval_at(cfg.q)) for k, v in sorted(fit.factors.items())}
            text = f"{'PASS' if fit.relations_hold else 'FAIL'} fit5 n={n} " + " ".join(
                f"{k}={v}" for k, v in rec["factors"].items())
            _emit(cfg, rec, text, out)
            if not fit.relations_hold:
                status = 1
        return status

    raise ValueError(f"unknown command {cfg.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(config_from_args(args))
    except (OpIdentError, ValueError) as exc:
        print(f"opident: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
