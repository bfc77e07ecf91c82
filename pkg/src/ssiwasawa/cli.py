"""Command-line interface.

Exit codes: 0 success, 1 semantic finding (constraint violation or failed
consistency check), 2 input error.

Every subcommand accepts ``--input FILE``: a flat JSON object whose keys
mirror the command's options, or any JSON document this program emitted
(its ``"input"`` section is used). Explicit flags override file values, and
re-running on an emitted document reproduces it byte for byte.
"""

import argparse
import csv
import io
import json
import re
import sys

from .errors import ConstraintError, InputError
from .growth import (
    GrowthParams,
    consistency_check,
    rank_corank_diff,
    rank_stabilizes,
    sha_diff_ramified,
    sha_diff_stable,
    sha_table,
    validate_constraints,
)
from .local_module import analyze_module, build_presentation, flatten
from .tower import FieldSpec, build_tower

TOWER_NOTE = (
    "K_n = K n Q_p^nr(zeta_n); zeta_n has order p^(n+1) (p odd) or 2^(n+2) (p = 2); "
    "m(K) is the least n with K_n = K"
)
SHA_NOTE = (
    "assumes p odd not dividing the bad-reduction component counts, places above p "
    "unramified of local degree not divisible by 4, a cyclotomic tower, E(k_0) finite "
    "and Sha_0^(p) = 0; none of this is checked"
)


def _pair_arg(text):
    parts = [x for x in re.split(r"[,\s]+", text.strip("()[] ")) if x]
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected one or two integers, got {text!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _list_arg(text):
    parts = [x for x in re.split(r"[,\s]+", text.strip("()[] ")) if x]
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from None


def _subgroup_arg(text):
    if text.strip() == "full-cyclotomic":
        return "full-cyclotomic"
    parts = _list_arg(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"subgroup generator must be a pair (a,u), got {text!r}")
    return parts


def _range_arg(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return [lo, hi]


def _load_input(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path} must hold a JSON object")
    if "input" in doc and isinstance(doc["input"], dict):
        doc = doc["input"]
    return doc


def _merged(args, keys):
    """Option values: file first, then explicit flags; only ``keys`` survive."""
    values = _load_input(args.input) if args.input else {}
    extra = set(values) - set(keys)
    if extra:
        raise InputError(f"unknown input keys for {args.command}: {sorted(extra)}")
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            values[k] = v
    return values


def _field_spec(args):
    v = _merged(args, ["p", "f", "m", "a_p", "subgroup", "full_cyclotomic"])
    sub = v.get("subgroup") or []
    gens = [g for g in sub if g != "full-cyclotomic"]
    full = bool(v.get("full_cyclotomic")) or any(g == "full-cyclotomic" for g in sub)
    if "p" not in v:
        raise InputError("--p is required")
    v["subgroup"] = [list(g) for g in gens]
    v["full_cyclotomic"] = full
    return FieldSpec.from_dict(v)


PARAM_KEYS = ["p", "d", "r", "rho", "r_s", "nu", "mu", "lam", "delta", "mu_list", "a_p"]


def _growth_params(args, more=()):
    v = _merged(args, PARAM_KEYS + list(more))
    if "p" not in v:
        raise InputError("--p is required")
    return GrowthParams.from_dict({k: v[k] for k in PARAM_KEYS if k in v}), v


def _emit(args, text):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(command, inputs, result):
    doc = {"command": command, "input": inputs, "result": result}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _tower_result(tower):
    return {
        "group": list(tower.G.cyclic_orders),
        "levels": [
            {"n": n, "degree": tower.degrees[n], "subgroup_order": tower.levels[n].order}
            for n in sorted(tower.levels)
        ],
        "m_of_k": tower.m_of_K,
        "c": tower.c,
        "frobenius": list(tower.frobenius_lift),
    }


def cmd_tower(args):
    spec = _field_spec(args)
    tower = build_tower(spec)
    res = _tower_result(tower)
    if args.format == "json":
        return _json("tower", spec.to_dict(), res), 0
    if args.format == "csv":
        return _csv(["n", "degree", "subgroup_order"], [[l["n"], l["degree"], l["subgroup_order"]] for l in res["levels"]]), 0
    orders = " x ".join(f"Z/{n}" for n in res["group"]) or "trivial"
    lines = [
        f"G = Gal(K/Q_{spec.p}) = {orders}  (order {tower.G.order})",
        f"m(K) = {tower.m_of_K}",
        f"c = [K_0(zeta_0):K_0] = {tower.c}",
        f"Frobenius lift = {tuple(tower.frobenius_lift)}",
        "levels:",
    ]
    for l in res["levels"]:
        lines.append(f"  n={l['n']:>2}  [K_n:Q_p]={l['degree']:<4} |Gal(K/K_n)|={l['subgroup_order']}")
    lines.append(f"note: {TOWER_NOTE}")
    return "\n".join(lines) + "\n", 0


def cmd_module(args):
    spec = _field_spec(args)
    tower = build_tower(spec)
    pres = build_presentation(tower)
    inv = analyze_module(pres)
    res = {
        "generators": pres.generator_labels(),
        "relations": [label for label, _ in pres.relations],
        "invariant_factors": list(inv.invariant_factors),
        "zp_rank": inv.zp_rank,
        "p_torsion": list(inv.p_torsion_exponents),
    }
    if args.format == "json":
        res["group_elements"] = [list(g) for g in tower.G.elements()]
        res["matrix"] = flatten(pres)
        return _json("module", spec.to_dict(), res), 0
    torsion = ", ".join(f"Z/{spec.p}^{k}" for k in inv.p_torsion_exponents) or "none"
    lines = [
        f"generators: {len(pres.generators)} ({', '.join(res['generators'])}) over Z[G], |G| = {tower.G.order}",
        f"relations: {len(pres.relations)}",
        f"invariant factors of the underlying group: {res['invariant_factors']}",
        f"Z_p-rank: {inv.zp_rank}",
        f"p-torsion: {torsion}",
    ]
    return "\n".join(lines) + "\n", 0


def _n_values(v, key="n"):
    if key not in v:
        raise InputError(f"--{key.replace('_', '-')} is required")
    lo, hi = v[key]
    return range(lo, hi + 1)


def cmd_sha_table(args):
    v = _merged(args, ["p", "d", "n"])
    for k in ("p", "d"):
        if k not in v:
            raise InputError(f"--{k} is required")
    rows = sha_table(v["d"], v["p"], _n_values(v))
    if args.format == "json":
        res = [{"n": n, "exponent": e, "diff": df} for n, e, df in rows]
        return _json("sha-table", v, res), 0
    if args.format == "csv":
        return _csv(["n", "exponent", "diff"], rows), 0
    lines = [f"log_p |Sha_n^(p)| for p={v['p']}, [k_0:Q]={v['d']}", "   n  exponent  diff"]
    lines += [f"{n:>4}  {e:>8}  {df:>4}" for n, e, df in rows]
    lines.append(f"note: {SHA_NOTE}")
    return "\n".join(lines) + "\n", 0


def cmd_rank_diff(args):
    v = _merged(args, ["p", "rho_s", "n"])
    for k in ("p", "rho_s"):
        if k not in v:
            raise InputError(f"--{k.replace('_', '-')} is required")
    rows = [(n, rank_corank_diff(v["rho_s"], v["p"], n)) for n in _n_values(v)]
    if args.format == "json":
        return _json("rank-diff", v, [{"n": n, "diff": x} for n, x in rows]), 0
    if args.format == "csv":
        return _csv(["n", "diff"], rows), 0
    return "".join(f"n={n}: {x}\n" for n, x in rows), 0


def cmd_growth_diff(args):
    params, extra = _growth_params(args, ["theorem", "n"])
    theorem = extra.get("theorem", "2d")
    if theorem not in ("2d", "3b"):
        raise InputError(f"--theorem must be 2d or 3b, got {theorem!r}")
    fn = sha_diff_stable if theorem == "2d" else sha_diff_ramified
    inputs = dict(params.to_dict(), theorem=theorem, n=extra.get("n"))
    try:
        rows = [(n, fn(params, n)) for n in _n_values(extra)]
    except ConstraintError as exc:
        if args.format == "json":
            return _json("growth-diff", inputs, {"violations": exc.violations}), 1
        return "".join(f"violation: {x}\n" for x in exc.violations), 1
    if args.format == "json":
        return _json("growth-diff", inputs, [{"n": n, "diff": x} for n, x in rows]), 0
    if args.format == "csv":
        return _csv(["n", "diff"], rows), 0
    return "".join(f"n={n} (s={n % 2}): log_p|Sha_n| - log_p|Sha_n-1| = {x}\n" for n, x in rows), 0


def cmd_validate(args):
    params, _ = _growth_params(args)
    bad = validate_constraints(params)
    code = 1 if bad else 0
    if args.format == "json":
        return _json("validate", params.to_dict(), {"violations": bad, "valid": not bad}), code
    if args.format == "csv":
        return _csv(["violation"], [[b] for b in bad]), code
    if not bad:
        return "all constraints hold\n", 0
    return "".join(f"violation: {b}\n" for b in bad), code


def cmd_consistency(args):
    v = _merged(args, ["p", "d", "n_max"])
    for k in ("p", "d", "n_max"):
        if k not in v:
            raise InputError(f"--{k.replace('_', '-')} is required")
    rep = consistency_check(v["p"], v["d"], v["n_max"])
    code = 0 if rep.holds else 1
    if args.format == "json":
        return _json("consistency", v, rep.to_dict()), code
    if args.format == "csv":
        return _csv(["n", "residual"], sorted(rep.residuals.items())), code
    if rep.holds:
        text = f"holds from n={rep.verified_from}, λ=({rep.lambda0},{rep.lambda1})\n"
    else:
        text = (
            f"fails at n={rep.counterexample}; constant residuals only from n={rep.verified_from}, "
            f"λ=({rep.lambda0},{rep.lambda1})\n"
        )
    return text, code


def cmd_rank_stable(args):
    v = _merged(args, ["p", "d", "a_p"])
    for k in ("p", "d"):
        if k not in v:
            raise InputError(f"--{k} is required")
    ok = rank_stabilizes(v.get("a_p", 0), v["d"], v["p"])
    if args.format == "json":
        return _json("rank-stable", v, {"rank_stabilizes": ok}), 0
    if args.format == "csv":
        return _csv(["rank_stabilizes"], [[int(ok)]]), 0
    verdict = "sufficient condition met" if ok else "sufficient condition not met"
    return f"a_p != 0 and [k_0:Q] | (p^l+1)p^m: {verdict}\n", 0


def _common(sp, formats=("human", "json", "csv")):
    sp.add_argument("--input", metavar="FILE", help="JSON document supplying option values")
    sp.add_argument("--format", choices=formats, default="human")
    sp.add_argument("--output", metavar="PATH", help="write here instead of standard output")


def _field_options(sp, formats):
    sp.add_argument("--p", type=int)
    sp.add_argument("--f", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--a-p", dest="a_p", type=int)
    sp.add_argument(
        "--subgroup",
        action="append",
        type=_subgroup_arg,
        help="generator (a,u) of H in Z/f x (Z/p^(m+1))^*, u a unit residue; or full-cyclotomic",
    )
    _common(sp, formats)


def _param_options(sp):
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int, help="[k_0:Q]")
    sp.add_argument("--r", type=int)
    sp.add_argument("--a-p", dest="a_p", type=int)
    for flag, dest in [("--rho", "rho"), ("--r-s", "r_s"), ("--nu", "nu"), ("--mu", "mu"),
                       ("--lambda", "lam"), ("--delta", "delta")]:
        sp.add_argument(flag, dest=dest, type=_pair_arg, metavar="S0,S1")
    sp.add_argument("--mu-list", dest="mu_list", type=_list_arg, metavar="MU1,MU2,...")
    _common(sp)


def build_parser():
    parser = argparse.ArgumentParser(prog="ssiwasawa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tower", help="Galois tower K_-1 c ... c K_m(K) of an abelian K/Q_p")
    _field_options(sp, ("human", "json", "csv"))
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("module", help="presentation and invariants of E(K)^(p)")
    _field_options(sp, ("human", "json"))
    sp.set_defaults(func=cmd_module)

    sp = sub.add_parser("sha-table", help="tabulate log_p |Sha_n^(p)| in a cyclotomic tower")
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--n", type=_range_arg, metavar="A..B")
    _common(sp)
    sp.set_defaults(func=cmd_sha_table)

    sp = sub.add_parser("rank-diff", help="rho^(s)(p^n - p^(n-1))")
    sp.add_argument("--p", type=int)
    sp.add_argument("--rho-s", dest="rho_s", type=int)
    sp.add_argument("--n", type=_range_arg, metavar="A..B")
    _common(sp)
    sp.set_defaults(func=cmd_rank_diff)

    sp = sub.add_parser("growth-diff", help="first difference of log_p |Sha_n^(p)|")
    sp.add_argument("--theorem", choices=["2d", "3b"])
    sp.add_argument("--n", type=_range_arg, metavar="A..B")
    _param_options(sp)
    sp.set_defaults(func=cmd_growth_diff)

    sp = sub.add_parser("validate", help="check growth parameters against their constraints")
    _param_options(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("consistency", help="fit the stable difference law to the Sha exponents")
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--n-max", dest="n_max", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_consistency)

    sp = sub.add_parser("rank-stable", help="numerical criterion for rank stabilization when a_p != 0")
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--a-p", dest="a_p", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_rank_stable)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstraintError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1
    _emit(args, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
