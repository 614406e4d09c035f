"""Batch command-line front end.

Every command prints ``{"status", "payload", "diagnostics"}`` as JSON (or a
CSV table with ``--format csv``) and exits 0, 2 (validation), 3 (infeasible
request) or 4 (I/O).  Rationals are always written as "p/q" strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable

from . import copulas, dependence, mincx, pmf, polyrep
from .errors import EXIT_OK, MalformedInput, SymBernError
from .hypercube import to_bitstring
from .rational_linalg import format_fraction, rank, to_fraction


@dataclass
class CommandResult:
    status: str
    payload: Any
    diagnostics: list[dict] = field(default_factory=list)
    exit_code: int = EXIT_OK
    table: list[dict] | None = None  # rows for --format csv

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


class UsageError(SymBernError):
    code = "usage"
    exit_code = 2


# ------------------------------------------------------------------ inputs


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}", path=path) from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc.msg}", path=path) from exc


def _pmf(path: str | None) -> pmf.Pmf:
    if not path:
        raise UsageError("--pmf FILE is required")
    return pmf.Pmf.from_json(_load_json(path))


def _poly(path: str | None) -> polyrep.PolyRep:
    if not path:
        raise UsageError("--poly FILE is required")
    return polyrep.PolyRep.from_json(_load_json(path))


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise MalformedInput(f"{flag} expects comma-separated integers") from exc


def _float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise MalformedInput(f"{flag} expects comma-separated numbers") from exc


def _kernel_mix(text: str | None) -> dict[str, Fraction] | None:
    """``"10100:1/2,01011:1/2"`` to a bitstring -> weight map."""
    if not text:
        return None
    out = {}
    for item in text.split(","):
        key, sep, w = item.partition(":")
        if not sep:
            raise MalformedInput(f"kernel entry {item!r} must look like bits:weight")
        out[key.strip()] = to_fraction(w.strip())
    return out


def _fr(q) -> str:
    return format_fraction(q)


# ---------------------------------------------------------------- commands


def cmd_validate(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    return CommandResult("ok", {"valid": True, "pmf": f.to_json()})


def cmd_poly(a) -> CommandResult:
    p = polyrep.to_poly(_pmf(a.pmf[0] if a.pmf else None))
    return CommandResult("ok", {"poly": p.to_json(), "text": str(p), "in_ideal": polyrep.in_ideal(p)})


def cmd_type0(a) -> CommandResult:
    p = _poly(a.poly)
    t0 = polyrep.type0(p)
    mu = polyrep.equivalent(p, polyrep.to_poly(t0))
    return CommandResult("ok", {
        "pmf": t0.to_json(),
        "mass": _fr(polyrep.type0_mass(p)),
        "equivalence_factor": _fr(mu),
    })


def cmd_kernel_basis(a) -> CommandResult:
    basis = pmf.kernel_basis(_need(a.d, "--d"))
    rows = [{"index": to_bitstring(i, a.d - 1), "atoms": f.to_json()["atoms"]} for i, f in enumerate(basis)]
    return CommandResult("ok", {"d": a.d, "count": len(basis), "elements": rows},
                         table=[{"index": r["index"], **r["atoms"]} for r in rows])


def cmd_mincx_matrix(a) -> CommandResult:
    cols, m = mincx.system_matrix(_need(a.d, "--d"))
    labels = [to_bitstring(p, a.d - 1) for p in cols]
    payload = {"d": a.d, "columns": labels, "matrix": m.to_json(), "rank": rank(m)}
    table = [dict(zip(labels, map(_fr, row))) for row in m.to_rows()]
    return CommandResult("ok", payload, table=table)


def cmd_mincx_basis(a) -> CommandResult:
    sys_ = mincx.build_system(_need(a.d, "--d"))
    table = [dict(zip(sys_.column_labels(), map(_fr, v))) for v in sys_.basis]
    return CommandResult("ok", sys_.to_json(), table=table)


def cmd_mincx_gen(a) -> CommandResult:
    sys_ = mincx.build_system(_need(a.d, "--d"))
    if a.random:
        rng = random.Random(_need(a.seed, "--seed"))
        draws = [mincx.random_mincx(sys_, rng) for _ in range(a.count)]
        items = [{
            "pmf": r.pmf.to_json(),
            "combination": list(r.combination),
            "lambda": _fr(r.lam),
            "kernel": {k: _fr(v) for k, v in r.kernel_mix.items()},
        } for r in draws]
    else:
        combo = [to_fraction(t) for t in a.coeffs.split(",")] if a.coeffs else None
        lam = to_fraction(a.lam) if a.lam else Fraction(1)
        f = mincx.generate_mincx(sys_, combo, lam, _kernel_mix(a.kernel))
        items = [{"pmf": f.to_json()}]
    for it in items:
        f = pmf.Pmf.from_json(it["pmf"])
        it["sigma_cx_smallest"] = pmf.is_sigma_cx_smallest(f)
    return CommandResult("ok", {"d": a.d, "pmfs": items})


CHECKS: dict[str, Callable[[pmf.Pmf], bool]] = {
    "star_support": pmf.is_sigma_cx_smallest,
    "joint_mix": pmf.is_joint_mix,
    "sigma_ctm": dependence.sigma_ctm_exact,
    "vertex": pmf.is_vertex,
    "palindromic": pmf.is_palindromic,
}


def cmd_check(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    wanted = [k for k in CHECKS if getattr(a, k)] or list(CHECKS)
    checks = {k: CHECKS[k](f) for k in wanted}
    return CommandResult("ok", {"result": all(checks.values()), "checks": checks},
                         table=[{"check": k, "result": v} for k, v in checks.items()])


def cmd_cx_compare(a) -> CommandResult:
    if not a.pmf or len(a.pmf) != 2:
        raise UsageError("cx-compare needs --pmf twice")
    f, g = _pmf(a.pmf[0]), _pmf(a.pmf[1])
    order = pmf.cx_compare(f, g)
    sl_f = pmf.stop_loss_vector(pmf.sum_distribution(f))
    sl_g = pmf.stop_loss_vector(pmf.sum_distribution(g))
    table = [{"k": k, "first": _fr(x), "second": _fr(y)} for k, (x, y) in enumerate(zip(sl_f, sl_g))]
    return CommandResult("ok", {"order": order.value, "stop_loss": table}, table=table)


def cmd_copula_em(a) -> CommandResult:
    c = copulas.em_from_pmf(_pmf(a.pmf[0] if a.pmf else None))
    payload = {"copula": c.to_json()}
    if a.at:
        payload["cdf"] = copulas.em_cdf(c, _float_list(a.at, "--at"))
    return CommandResult("ok", payload)


def cmd_copula_fgm(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    c = copulas.fgm_from_pmf(f)
    payload = {"copula": c.to_json(), "admissible": copulas.fgm_admissible(c)}
    if a.at:
        u = _float_list(a.at, "--at")
        payload["cdf"] = copulas.fgm_cdf(c, u)
        payload["cdf_from_pmf"] = copulas.fgm_cdf_from_pmf(f, u)
    return CommandResult("ok", payload, table=[{"subset": k, "theta": v} for k, v in c.to_json()["thetas"].items()])


SAMPLERS = {"em": copulas.em_sample, "fgm": copulas.fgm_sample}


def cmd_sample(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    seed = _need(a.seed, "--seed")
    x = SAMPLERS[a.family](f, a.samples, seed)
    header = [f"u{j}" for j in range(1, f.d + 1)]
    rows = [dict(zip(header, map(float, r))) for r in x]
    return CommandResult("ok", {"family": a.family, "seed": seed, "n": a.samples, "samples": x.tolist()},
                         table=rows)


def cmd_measures(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    samples = None
    if a.samples_given:
        if a.family == "bernoulli":
            raise UsageError("Monte Carlo estimates are available for --family em or fgm")
        samples = SAMPLERS[a.family](f, a.samples, _need(a.seed, "--seed"))
    rows = []
    for j1, j2 in combinations(range(1, f.d + 1), 2):
        m = dependence.pair_measures(f, j1, j2, a.family)
        row = {"pair": f"{j1},{j2}", "rho_p": _fr(m.rho_p), "tau_k": _fr(m.tau_k)}
        if samples is not None:
            est = dependence.rho_estimate(samples, j1, j2)
            row.update(estimator="12*mean((Uj1-1/2)(Uj2-1/2))", rho_hat=est.value, std_error=est.std_error)
        rows.append(row)
    mm = dependence.mean_measures(f, a.family)
    payload = {"family": a.family, "pairs": rows,
               "mean": {"rho_bar": _fr(mm.rho_bar), "tau_bar": _fr(mm.tau_bar)},
               "phi_expectation": _fr(dependence.phi_expectation(f))}
    return CommandResult("ok", payload, table=rows)


def cmd_cross_moment3(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    triples = [tuple(_int_list(a.subset, "--subset"))] if a.subset else list(combinations(range(1, f.d + 1), 3))
    samples = None
    if a.samples_given:
        if a.family == "bernoulli":
            raise UsageError("Monte Carlo estimates are available for --family em or fgm")
        samples = SAMPLERS[a.family](f, a.samples, _need(a.seed, "--seed"))
    rows = []
    for t in triples:
        if len(t) != 3:
            raise UsageError("--subset must name exactly three indexes")
        cm = dependence.cross_moment3(f, *t, family=a.family)
        value = _fr(cm.value) if isinstance(cm.value, Fraction) else cm.value
        row = {"triple": ",".join(map(str, t)), "value": value, "raw": _fr(cm.raw)}
        if samples is not None:
            est = dependence.cross_moment3_estimate(samples, t)
            row.update(estimator="12^1.5*mean(prod(Uj-1/2))", estimate=est.value, std_error=est.std_error)
        rows.append(row)
    return CommandResult("ok", {"family": a.family, "triples": rows}, table=rows)


def cmd_rank_table(a) -> CommandResult:
    rows = [{"d": r.d, "rank_d": r.rank_d, "rank_d_plus_1": r.rank_next, "holds": r.holds}
            for r in mincx.rank_property_check(_need(a.d, "--d"))]
    return CommandResult("ok", {"rows": rows, "all_hold": all(r["holds"] for r in rows)}, table=rows)


def cmd_em_ctm_check(a) -> CommandResult:
    f = _pmf(a.pmf[0] if a.pmf else None)
    subset = _int_list(_need(a.subset, "--subset"), "--subset")
    res = dependence.em_sigma_ctm_check(f, subset, a.samples, _need(a.seed, "--seed"))
    payload: dict[str, Any] = {"result": res.kind, "subset": subset}
    if not isinstance(res, dependence.ExactTrue):
        payload.update(p_hat=res.p_hat, n=res.n)
    if isinstance(res, dependence.McFail):
        payload["witness"] = res.witness.to_json()
        payload["witness_verified"] = res.witness.verify()
    return CommandResult("ok", payload)


COMMANDS = {
    "validate": cmd_validate,
    "poly": cmd_poly,
    "type0": cmd_type0,
    "kernel-basis": cmd_kernel_basis,
    "mincx-matrix": cmd_mincx_matrix,
    "mincx-basis": cmd_mincx_basis,
    "mincx-gen": cmd_mincx_gen,
    "check": cmd_check,
    "cx-compare": cmd_cx_compare,
    "copula-em": cmd_copula_em,
    "copula-fgm": cmd_copula_fgm,
    "sample": cmd_sample,
    "measures": cmd_measures,
    "cross-moment3": cmd_cross_moment3,
    "rank-table": cmd_rank_table,
    "em-ctm-check": cmd_em_ctm_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int)
    common.add_argument("--pmf", action="append", metavar="FILE")
    common.add_argument("--poly", metavar="FILE")
    common.add_argument("--coeffs", metavar="c1,c2,...")
    common.add_argument("--lambda", dest="lam", metavar="p/q")
    common.add_argument("--kernel", metavar="bits:w,...", help="star kernel mixture, e.g. 10100:1/2,01101:1/2")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--subset", metavar="j1,j2,...")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="FILE")

    parser = argparse.ArgumentParser(prog="symbern", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "check":
            for flag in CHECKS:
                sp.add_argument("--" + flag.replace("_", "-"), dest=flag, action="store_true")
        if name == "mincx-gen":
            sp.add_argument("--random", action="store_true")
            sp.add_argument("--count", type=int, default=1)
        if name in ("sample", "measures", "cross-moment3"):
            default = "em" if name == "sample" else "bernoulli"
            choices = ("em", "fgm") if name == "sample" else dependence.FAMILIES
            sp.add_argument("--family", choices=choices, default=default)
        if name in ("copula-em", "copula-fgm"):
            sp.add_argument("--at", metavar="u1,...,ud", help="evaluate the copula at this point")
    return parser


def _render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields: list[str] = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _execute(args: argparse.Namespace) -> CommandResult:
    args.samples_given = args.samples is not None
    if args.samples is None:
        args.samples = 100_000 if args.command == "em-ctm-check" else 1000
    try:
        if args.samples < 1:
            raise UsageError("--samples must be positive")
        return COMMANDS[args.command](args)
    except SymBernError as err:
        return CommandResult("error", {"error": err.to_dict()}, [err.to_dict()], exit_code=err.exit_code)


def run(argv: list[str]) -> CommandResult:
    """Parse and execute one command; library errors become error results."""
    return _execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    result = _execute(args)
    if args.format == "csv" and result.status == "ok" and result.table is not None:
        text = _render_csv(result.table)
    else:
        text = json.dumps(result.to_json(), indent=2) + "\n"
    if not args.out:
        sys.stdout.write(text)
        return result.exit_code
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        err = MalformedInput(f"cannot write {args.out}: {exc.strerror}", path=args.out)
        sys.stdout.write(json.dumps(CommandResult("error", {"error": err.to_dict()}).to_json()) + "\n")
        return err.exit_code
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
