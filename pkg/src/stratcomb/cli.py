"""Command-line interface.

Every command reads a group spec file with one ``key=value`` per line::

    family=GL
    rank=3
    sigma=identity        # or perm:2,1 / opposite
    mu=1,0,0

``hncheck`` also accepts ``levi=`` (a sigma-invariant vector whose
centralizer is M, default mu-bar) and ``b0=`` (translation part of b0,
default mu).

Exit codes: 0 ok, 1 usage or spec error, 2 computation error, 3 hard
verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .affine import AffineElement, mu_bar, mu_natural, pi1_coinvariants
from .bgmu import enumerate_bgmu, hn_applicable, levi_centralizer, mu_central_in_levi
from .eozip import eo_labels, eo_newton_table
from .errors import SpecError
from .rootdata import GroupSpec, build_root_datum, fmt_vec
from .weyl import weyl_group

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_HARD = 0, 1, 2, 3
KNOWN_KEYS = ("family", "rank", "sigma", "mu", "levi", "b0")


class UsageError(Exception):
    pass


# -- spec files --------------------------------------------------------------------


def _parse_vector(text, line, key):
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"{key}: cannot parse vector {text!r}", line) from None


def parse_spec_text(text):
    """Parse spec file contents into ``(GroupSpec, options)``."""
    values, lines = {}, {}
    for num, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise SpecError(f"expected key=value, got {body!r}", num)
        key, val = (s.strip() for s in body.split("=", 1))
        if key not in KNOWN_KEYS:
            raise SpecError(f"unknown key {key!r}", num)
        if key in values:
            raise SpecError(f"duplicate key {key!r}", num)
        values[key], lines[key] = val, num

    for key in ("family", "rank"):
        if key not in values:
            raise SpecError(f"missing required key {key!r}")
    try:
        rank = int(values["rank"])
    except ValueError:
        raise SpecError(f"rank must be an integer, got {values['rank']!r}", lines["rank"]) from None

    sigma = None
    raw_sigma = values.get("sigma", "identity")
    if raw_sigma == "opposite":
        sigma = "opposite"
    elif raw_sigma.startswith("perm:"):
        try:
            sigma = tuple(int(x) for x in raw_sigma[5:].split(","))
        except ValueError:
            raise SpecError(f"bad permutation {raw_sigma!r}", lines["sigma"]) from None
    elif raw_sigma != "identity":
        raise SpecError(f"sigma must be identity, perm:..., or opposite, not {raw_sigma!r}", lines["sigma"])

    try:
        spec = GroupSpec(values["family"], rank, sigma)
    except SpecError as exc:
        key = "sigma" if "sigma" in str(exc) else "family"
        raise SpecError(str(exc), lines.get(key)) from None

    opts = {}
    for key in ("mu", "levi", "b0"):
        if key in values:
            opts[key] = _parse_vector(values[key], lines[key], key)
            opts[key + "_line"] = lines[key]
    return spec, opts


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read spec file: {exc}") from None
    return parse_spec_text(text)


def _build(spec, opts, need_mu=True):
    datum = build_root_datum(spec)
    mu = None
    if need_mu:
        if "mu" not in opts:
            raise SpecError("missing required key 'mu'")
        try:
            mu = datum.cochar(opts["mu"])
        except ValueError as exc:
            raise SpecError(str(exc), opts["mu_line"]) from None
    return datum, mu


# -- commands ----------------------------------------------------------------------


def cmd_describe(args, spec, opts):
    datum, _ = _build(spec, opts, need_mu=False)
    W = weyl_group(datum)
    pi1 = pi1_coinvariants(datum)
    out = {
        "group": spec.name,
        "sigma": list(datum.sigma_perm),
        "cochar_rank": datum.cochar_rank,
        "roots": [list(r) for r in datum.roots],
        "coroots": [list(c) for c in datum.coroots],
        "simple_roots": [list(datum.roots[i]) for i in datum.simple_indices],
        "positive_roots": [list(datum.roots[i]) for i in datum.positive_indices],
        "sigma_cochar": [list(r) for r in datum.sigma_cochar],
        "weyl_order": len(W),
        "pi1_coinvariants": pi1.describe(),
    }
    if "mu" in opts:
        mu = datum.cochar(opts["mu"])
        out["mu"] = list(mu)
        out["mu_bar"] = fmt_vec(mu_bar(datum, mu))
        out["mu_natural"] = mu_natural(datum, mu).to_json()
    text = "\n".join(f"{k}: {v}" for k, v in out.items()) + "\n"
    return out, text, None, EXIT_OK


def cmd_bgmu(args, spec, opts):
    datum, mu = _build(spec, opts)
    poset = enumerate_bgmu(datum, mu)
    out = poset.to_json()
    lines = [f"B(G, mu) for {spec.name}, mu = {list(mu)}: {len(poset.elements)} classes"]
    for i, e in enumerate(poset.elements):
        tag = " max" * (i == poset.max_index) + " basic" * (i == poset.basic_index)
        lines.append(f"  [{i}] nu={fmt_vec(e.nu)} kappa={e.kappa.to_json()}{tag}")
    return out, "\n".join(lines) + "\n", poset.to_dot(), EXIT_OK


def cmd_eoposet(args, spec, opts):
    datum, mu = _build(spec, opts)
    labels = eo_labels(datum, mu)
    out = labels.to_json()
    lines = [f"^J W for {spec.name}, mu = {list(mu)}, J = {sorted(labels.J)}: {len(labels)} labels"]
    for i, lab in enumerate(labels):
        lines.append(f"  [{i}] {lab.w!r} length {lab.length}")
    return out, "\n".join(lines) + "\n", labels.to_dot(), EXIT_OK


def cmd_eo2newton(args, spec, opts):
    datum, mu = _build(spec, opts)
    rows = eo_newton_table(datum, mu)
    lines = [f"{r['name']:>12}  length {r['length']}  nu={r['nu']}  kappa={r['kappa']}"
             + ("  b_max" if r["is_bmax"] else "") for r in rows]
    return rows, "\n".join(lines) + "\n", None, EXIT_OK


def cmd_hncheck(args, spec, opts):
    datum, mu = _build(spec, opts)
    center = opts.get("levi", mu_bar(datum, mu))
    try:
        levi = levi_centralizer(datum, center)
    except ValueError as exc:
        raise SpecError(str(exc), opts.get("levi_line")) from None
    b0_t = opts.get("b0", mu)
    try:
        b0_t = datum.cochar(b0_t)
    except ValueError as exc:
        raise SpecError(str(exc), opts.get("b0_line")) from None
    b0 = AffineElement(b0_t, weyl_group(datum).identity)
    ok, report = hn_applicable(datum, mu, levi, b0)
    _, witness = mu_central_in_levi(datum, mu)
    out = {
        "group": spec.name,
        "lambda": list(mu),
        "levi_center": fmt_vec(center),
        "levi_roots": [list(r) for r in levi.roots],
        "b0": list(b0_t),
        "applicable": ok,
        "conditions": report,
        "mu_central_in_levi": {"ok": True, "witness": [[list(a), [str(x) for x in t]] for a, t in witness.items()]},
    }
    lines = [f"Hodge-Newton conditions for {spec.name}, lambda = {list(mu)}, b0 = t^{list(b0_t)}:"]
    for key, val in report.items():
        lines.append(f"  {key}: {'ok' if val['ok'] else 'FAILS'}")
    lines.append(f"  applicable: {ok}")
    return out, "\n".join(lines) + "\n", None, EXIT_OK


def _schedule(text):
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--m-schedule must be a comma-separated list of integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise UsageError("--m-schedule entries must be positive")
    return vals


def cmd_verify_loop(args, spec, opts):
    from .loopgrp.experiments import summary_line, verify_hn_reduction, verify_mu_conjugacy

    if spec.family != "GL" or spec.sigma is not None:
        raise SpecError("verify-loop works with split GL_n only")
    datum, mu = _build(spec, opts)
    schedule = _schedule(args.m_schedule)
    seed = 0 if args.seed is None else args.seed
    exps = [e.strip().upper() for e in args.experiment.split(",") if e.strip()]
    if any(e not in ("A", "B", "C", "HN") for e in exps):
        raise UsageError(f"--experiment takes a list from A,B,C,HN, got {args.experiment!r}")
    reports = []
    loop_exps = tuple(e for e in exps if e != "HN")
    if loop_exps:
        reports += verify_mu_conjugacy(q=args.q, m_schedule=schedule, N=args.N, mu=mu, samples=args.samples,
                                   seed=seed, experiments=loop_exps, exhaustive=args.exhaustive)
    if "HN" in exps:
        reports.append(verify_hn_reduction(q=args.q, m=schedule[0], N=args.N, mu=mu,
                                           samples=args.samples, seed=seed, m_cap=max(schedule)))
    code = EXIT_HARD if any(r["hard_failures"] for r in reports) else EXIT_OK
    text = "\n".join(summary_line(r) for r in reports) + "\n"
    return reports, text, None, code


COMMANDS = {
    "describe": cmd_describe,
    "bgmu": cmd_bgmu,
    "eoposet": cmd_eoposet,
    "eo2newton": cmd_eo2newton,
    "hncheck": cmd_hncheck,
    "verify-loop": cmd_verify_loop,
}


# -- driver ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="stratcomb", description="Newton and EO stratification combinatorics.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--spec", required=True, help="group spec file")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--format", choices=("json", "dot", "text"), default="json")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--m-schedule", default=",".join(str(d) for d in range(1, 13)))
    parser.add_argument("--N", type=int, default=3)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--experiment", default="A,B,C", help="comma list from A,B,C,HN")
    parser.add_argument("--exhaustive", action="store_true",
                        help="enumerate K1 mu K1 completely (experiment A)")
    return parser


def render(obj, text, dot, fmt):
    if fmt == "json":
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "text":
        return text
    if dot is None:
        raise UsageError("--format dot is only available for bgmu and eoposet")
    return dot


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        spec, opts = load_spec(args.spec)
        obj, text, dot, code = COMMANDS[args.command](args, spec, opts)
        payload = render(obj, text, dot, args.format)
    except (UsageError, SpecError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except Exception as exc:  # computation errors are surfaced verbatim
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_COMPUTE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        stdout.write(payload)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
