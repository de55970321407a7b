"""Command-line front end.

Every command prints one JSON document (or ``--format text`` lines). Exit
status: 0 success, 1 infeasible or negative verdict, 2 input error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import checks
from .conjugate import INF, from_descriptor
from .core import ConsistencyError, DecminError, EnumerationError, InfeasibleError, fraction_str
from .setfn import NotSupermodular, from_json, validate_supermodular

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


class Verdict(Exception):
    """Carries a result payload together with a non-zero exit status."""

    def __init__(self, payload, status=EXIT_NONE):
        super().__init__(str(payload))
        self.payload = payload
        self.status = status


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, float) and obj in (INF, -INF):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _instance(args, validate=True):
    path = args.instance or args.path
    if not path:
        raise ValueError("an instance file is required")
    return from_json(_load(path), validate=validate)


def _objective(args, p):
    from .duality import SeparableObjective
    raw = json.loads(args.cost) if args.cost else {"kind": "square"}
    if "kind" in raw:
        return SeparableObjective.uniform(from_descriptor(raw), p.n)
    return SeparableObjective([from_descriptor(raw[s]) for s in p.ground.labels])


def _vec(p, x):
    return p.ground.as_dict(x)


# --------------------------------------------------------------------------
# commands


def cmd_validate(args):
    p = _instance(args, validate=False)
    bad = validate_supermodular(p)
    g = p.ground
    out = {"valid": not bad,
           "violations": [{"X": g.members(X), "Y": g.members(Y), "slack": s} for X, Y, s in bad]}
    if bad:
        raise Verdict(out)
    return out


def cmd_enumerate(args):
    from .mconvex import sorted_points
    p = _instance(args)
    pts = sorted_points(p)
    return {"count": len(pts), "points": [_vec(p, x) for x in pts]}


def cmd_decmin(args):
    from .continuous import relax_decmin
    from .core import square_sum
    from .partition import canonical_decomposition
    p = _instance(args)
    m = relax_decmin(p)
    return {"decmin": _vec(p, m), "beta": list(canonical_decomposition(p).betas),
            "squaresum": square_sum(m)}


def cmd_beta1(args):
    from .decmin import beta1
    return {"beta1": beta1(_instance(args))}


def cmd_r1(args):
    from .decmin import r1
    return {"r1": r1(_instance(args))}


def cmd_excess(args):
    from .decmin import min_total_excess
    if args.a is None:
        raise ValueError("--a is required")
    p = _instance(args)
    lhs, rhs, X = min_total_excess(p, args.a)
    return {"a": args.a, "min": lhs, "max": rhs, "witness": p.ground.members(X)}


def cmd_canonical(args):
    from .partition import canonical_decomposition
    p = _instance(args)
    can = canonical_decomposition(p).to_json()
    return {"betas": can["betas"], "chain": can["chain"]}


def cmd_principal(args):
    from .partition import principal_decomposition
    return principal_decomposition(_instance(args)).to_json()


def cmd_relate(args):
    from .partition import canonical_decomposition, principal_decomposition, relate_partitions
    p = _instance(args)
    rep = relate_partitions(canonical_decomposition(p), principal_decomposition(p))
    if not rep.ok:
        raise Verdict(rep.to_json(), EXIT_CONSISTENCY)
    return rep.to_json()


def cmd_minnorm(args):
    from .continuous import continuous_sqsum_duality, min_norm_point
    p = _instance(args)
    mn = min_norm_point(p)
    primal, dual = continuous_sqsum_duality(p)
    return {"m_R": _vec(p, mn.m_R), "lambdas": list(mn.lambdas), "norm2": primal, "dual": dual}


def cmd_relax(args):
    from .continuous import pwl_minimizer, relax_decmin, relax_decmin_pwl, relaxation_data
    from .core import ceil_vec, floor_vec
    p = _instance(args)
    if args.method == "b":
        c = pwl_minimizer(p)
        lo, hi = floor_vec(c), ceil_vec(c)
        w = tuple(u * u - l * l for l, u in zip(lo, hi))
        x = relax_decmin_pwl(p)
    else:
        d = relaxation_data(p)
        lo, hi, w = d["lower"], d["upper"], d["weight"]
        x = relax_decmin(p)
    return {"method": args.method, "lower": _vec(p, lo), "upper": _vec(p, hi),
            "weight": _vec(p, w), "result": _vec(p, x)}


def cmd_minimize(args):
    from .duality import minimize_separable
    p = _instance(args)
    obj = _objective(args, p)
    x = minimize_separable(p, obj)
    return {"x": _vec(p, x), "value": obj(x)}


def cmd_certify(args):
    from .duality import certificate, dual_certificate, minimize_separable
    p = _instance(args)
    obj = _objective(args, p)
    if args.certificate:
        data = _load(args.certificate)
        x = p.ground.vector(data["x"])
        pi = p.ground.vector(data["pi"])
        cert = certificate(p, obj, x, pi)
        out = cert.to_json(p.ground)
        if cert.gap != 0:
            raise Verdict(out)
        return out
    return dual_certificate(p, obj, minimize_separable(p, obj)).to_json(p.ground)


def cmd_dualset(args):
    from .duality import dual_optimal_set
    from .partition import canonical_decomposition
    p = _instance(args)
    out = dual_optimal_set(p).to_json(p.ground)
    out["pi_star"] = _vec(p, canonical_decomposition(p).pi_star)
    return out


def cmd_majorize(args):
    from .majorize import (dec_compare, dec_min_class, excess_profile_leq, inc_compare,
                           inc_max_class, least_majorized, majorizes)
    from .mconvex import enumerate_points
    if args.x and args.y:
        x, y = json.loads(args.x), json.loads(args.y)
        return {"x_majorized_by_y": majorizes(y, x), "excess_profile": excess_profile_leq(x, y),
                "dec": dec_compare(x, y), "inc": inc_compare(x, y)}
    p = _instance(args)
    pts = enumerate_points(p)
    lm = least_majorized(pts)
    out = {"least_majorized": None if lm is None else _vec(p, lm),
           "decmin": [_vec(p, m) for m in dec_min_class(pts)],
           "incmax": [_vec(p, m) for m in inc_max_class(pts)]}
    if lm is None:
        raise Verdict(out)
    return out


def cmd_intersect(args):
    from .duality import minimize_over_intersection
    from .majorize import dec_min_class, inc_max_class, least_majorized
    from .mconvex import enumerate_points
    if not args.instance2:
        raise ValueError("--instance2 is required")
    p1 = _instance(args)
    p2 = from_json(_load(args.instance2))
    if p1.ground != p2.ground:
        raise ValueError("both instances need the same ground set")
    obj = _objective(args, p1)
    value, arg = minimize_over_intersection(p1, p2, obj)
    if value == INF:
        raise Verdict({"feasible": False, "value": "inf"})
    common = enumerate_points(p1) & enumerate_points(p2)
    lm = least_majorized(common)
    return {"feasible": True, "value": value, "argmin": [_vec(p1, x) for x in arg],
            "least_majorized": None if lm is None else _vec(p1, lm),
            "decmin": [_vec(p1, m) for m in dec_min_class(common)],
            "incmax": [_vec(p1, m) for m in inc_max_class(common)]}


def cmd_flow(args):
    from .flows import FlowNetwork, flow_certificate, hoffman_feasible, min_cost_mflow
    path = args.instance or args.path
    net = FlowNetwork.from_json(_load(path))
    rep = hoffman_feasible(net)
    if not rep.feasible:
        raise Verdict({"feasible": False, "cut": rep.cut, "max_inflow": rep.inflow_bound,
                       "demand": rep.required})
    x = min_cost_mflow(net, rep.flow)
    out = flow_certificate(net, x).to_json(net)
    out["feasible"] = True
    return out


def cmd_selftest(args):
    from .instances import random_instances
    rng = random.Random(args.seed)
    tallies = {}
    for p in random_instances(args.seed, args.instances):
        for name, ok in checks.instance_checks(p).items():
            tallies.setdefault(name, [0, 0])
            tallies[name][0 if ok else 1] += 1
    for name, fn in (("conjugates", lambda: checks.conjugate_checks(checks.random_cost(rng), 20)),
                     ("flows", lambda: checks.flow_checks(rng))):
        tallies[name] = [0, 0]
        for _ in range(max(5, args.instances // 10)):
            tallies[name][0 if fn() else 1] += 1
    out = {"seed": args.seed, "instances": args.instances,
           "suites": {k: {"passed": v[0], "failed": v[1]} for k, v in sorted(tallies.items())}}
    out["ok"] = all(v[1] == 0 for v in tallies.values())
    if not out["ok"]:
        raise Verdict(out, EXIT_CONSISTENCY)
    return out


COMMANDS = {
    "validate": cmd_validate, "enumerate": cmd_enumerate, "decmin": cmd_decmin,
    "beta1": cmd_beta1, "r1": cmd_r1, "excess": cmd_excess, "canonical": cmd_canonical,
    "principal": cmd_principal, "relate": cmd_relate, "minnorm": cmd_minnorm,
    "relax": cmd_relax, "minimize": cmd_minimize, "certify": cmd_certify,
    "dualset": cmd_dualset, "majorize": cmd_majorize, "intersect": cmd_intersect,
    "flow": cmd_flow, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="decmin", description="Dec-min computations on M-convex sets.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("path", nargs="?", help="instance file (same as --instance)")
    ap.add_argument("--instance")
    ap.add_argument("--instance2", help="second instance for intersect")
    ap.add_argument("--cost", help="cost descriptor JSON, or a map from labels to descriptors")
    ap.add_argument("--certificate", help="certificate JSON to check (certify)")
    ap.add_argument("--a", type=int)
    ap.add_argument("--x", help="vector JSON for majorize")
    ap.add_argument("--y", help="vector JSON for majorize")
    ap.add_argument("--method", choices=["a", "b"], default="a")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--max-enum", type=int)
    ap.add_argument("--out")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    return ap


def _render(payload, fmt: str) -> str:
    payload = _jsonable(payload)
    if fmt == "text":
        return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(payload.items()))
    return json.dumps(payload, sort_keys=True)


def run(argv=None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    if args.max_enum:
        from .mconvex import set_enum_cap
        set_enum_cap(args.max_enum)
    status = EXIT_OK
    try:
        payload = COMMANDS[args.command](args)
    except Verdict as v:
        payload, status = v.payload, v.status
    except InfeasibleError as e:
        payload, status = {"error": "infeasible", "detail": str(e)}, EXIT_NONE
    except ConsistencyError as e:
        payload, status = {"error": "consistency", "detail": str(e)}, EXIT_CONSISTENCY
    except (OSError, ValueError, KeyError, TypeError, NotSupermodular, EnumerationError,
            DecminError) as e:
        payload, status = {"error": "input", "detail": str(e)}, EXIT_INPUT
    text = _render(payload, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
