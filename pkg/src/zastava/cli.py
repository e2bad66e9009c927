"""Command-line front end: every verification suite and computation as a
reproducible command with deterministic JSON output.

Exit status is 0 iff every check in the invocation passes, 1 if some check
fails, and 2 for malformed input or infeasible sizes.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from multiprocessing import Pool

from .scalars import Q, fmt_q

DEFAULTS = {"trunc": None, "seed": 0, "format": "json", "mode": None, "field": "GF(2)",
            "variant": "cyclic", "mu": None, "beta": None}


# ---------------------------------------------------------------- parsing helpers

def parse_vector(text):
    """'0,1,1' -> (0, 1, 1); entries may be rationals like 1/2."""
    if isinstance(text, (list, tuple)):
        return tuple(Q(x) for x in text)
    text = str(text).strip()
    if not text:
        return ()
    try:
        return tuple(Q(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from exc


def _ints(vec):
    out = []
    for x in vec:
        if Fraction(x).denominator != 1 or x < 0:
            raise ValueError(f"dimension entries must be nonnegative integers, got {fmt_q(x)}")
        out.append(int(x))
    return tuple(out)


def jsonable(obj):
    """Plain JSON data; exact rationals become strings like '3/2'."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return fmt_q(obj)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(str(x) for x in k): jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    to_dict = getattr(obj, "to_dict", None)
    if to_dict is not None:
        return jsonable(to_dict())
    return str(obj)


# ---------------------------------------------------------------- tasks

def _shapes(cfg):
    shapes = []
    for d in cfg["d"]:
        d = _ints(d)
        n = cfg.get("n") or len(d)
        if len(d) != n:
            raise ValueError(f"--d {','.join(map(str, d))} has length {len(d)} but --n is {n}")
        shapes.append((n, d))
    if not shapes:
        raise ValueError("at least one --d is required")
    return shapes


def task_verify(kind, n, d, cfg):
    if kind == "poisson":
        from .poisson import verify_poisson_relations
        rep = verify_poisson_relations(n, d, max_index=cfg["trunc"] if cfg["trunc"] is not None else 3)
    elif kind == "quantum":
        from .uea import verify_quantum_relations
        rep = verify_quantum_relations(n, d, cfg["mu"], max_index=cfg["trunc"] if cfg["trunc"] is not None else 2)
    elif kind == "yangian":
        from .yangian import classical_limit_relations, verify_yangian_relations
        N = cfg["trunc"] if cfg["trunc"] is not None else 4
        if cfg.get("classical"):
            rep = classical_limit_relations(n, d, N)
        else:
            rep = verify_yangian_relations(n, d, cfg["mu"], N, mode=cfg["mode"] or "finite",
                                           beta=cfg["beta"])
    elif kind == "jacobi":
        from .lie import build_chainsaw_lie, jacobi_violations, weight_violations
        from .report import Report
        rep = Report(f"jacobi n={n} d={list(d)}")
        for mode in ("eprime", "diag"):
            alg = build_chainsaw_lie(n, d, mode)
            bad = jacobi_violations(alg)
            rep.add("antisymmetry and jacobi", {"basis": mode, "size": len(alg.basis)}, not bad,
                    violations=[list(map(str, b)) for b in bad[:5]])
            badw = weight_violations(alg)
            rep.add("torus weights", {"basis": mode}, not badw, violations=len(badw))
    else:
        raise ValueError(f"unknown verification {kind!r}")
    out = rep.to_dict()
    return {"ok": rep.ok, "shape": {"n": n, "d": list(d)}, "report": out}


def task_character(n, d, cfg):
    from .character import compare_with_Y, molien_weyl_character, sl2_closed_form_oracle
    N = cfg["trunc"] if cfg["trunc"] is not None else 4
    F = molien_weyl_character(n, d, N)
    res = {"shape": {"n": n, "d": list(d)}, "N": N, "by_degree": F.by_degree(),
           "constant_term": F.constant_term(), "nonnegative": F.nonnegative(),
           "coefficients": json.loads(F.to_json())["coefficients"]}
    ok = F.constant_term() == 1 and F.nonnegative()
    active = [l for l in range(n) if d[l]]
    if len(active) == 1 and n >= 2 and d[(active[0] + 1) % n] == 0 and d[(active[0] - 1) % n] == 0:
        oracle = sl2_closed_form_oracle(d[active[0]], N, n, active[0])
        res["closed_form_match"] = oracle == F
        ok = ok and oracle == F
    if cfg.get("compare_y"):
        cmp = compare_with_Y(n, d, N, cfg["mu"])
        res["compare_with_Y"] = {"equal": cmp["equal"], "terms": cmp["terms"],
                                 "differences": {",".join(map(str, k)): list(v)
                                                 for k, v in sorted(cmp["differences"].items())}}
        ok = ok and cmp["equal"]
    res["ok"] = ok
    return res


def _load_rep(cfg, n=None, d=None):
    from .quiver import ChainsawRep, random_rep
    if cfg.get("rep"):
        with open(cfg["rep"]) as fh:
            return ChainsawRep.from_json(fh.read())
    if cfg.get("example") == "smoothness":
        return ChainsawRep(3, (0, 1, 1), [[], [[1]], [[1]]], [[], [[0]], []], [[], [1], [0]], [[], [0], [1]])
    if d is None:
        raise ValueError("give --rep FILE, --example smoothness, or --d with --seed")
    if cfg.get("smooth"):
        from .quiver import sample_smooth_point
        return sample_smooth_point(n, d, cfg["seed"])
    return random_rep(n, d, cfg["seed"], cfg["field"], cfg["variant"])


def _rep_targets(cfg):
    if cfg.get("rep") or cfg.get("example"):
        return [(None, None)]
    return _shapes(cfg)


def task_stability(n, d, cfg):
    from .quiver import stable_costable, stable_costable_bruteforce
    rep = _load_rep(cfg, n, d)
    st, co = stable_costable(rep)
    res = {"rep": json.loads(rep.to_json()), "stable": st, "costable": co, "ok": True}
    if rep.prime and sum(rep.d) <= 3:
        bst, bco = stable_costable_bruteforce(rep)
        res["bruteforce"] = {"stable": bst, "costable": bco}
        res["ok"] = (bst, bco) == (st, co)
    return res


def task_moment(n, d, cfg):
    from .quiver import is_in_zero_fiber, moment_cokernel, moment_map
    rep = _load_rep(cfg, n, d)
    mm = moment_map(rep)
    zero = is_in_zero_fiber(rep)
    res = {"rep": json.loads(rep.to_json()), "moment": mm, "in_zero_fiber": zero}
    if zero:
        res["cokernel_dim"] = len(moment_cokernel(rep))
    res["ok"] = True
    return res


def task_collapse(n, d, cfg):
    from .quiver import collapse_to_single_node
    rep = _load_rep(cfg, n, d)
    return {"rep": json.loads(rep.to_json()), "collapse": collapse_to_single_node(rep), "ok": True}


def task_strata(n, d, cfg):
    from .quiver import strata_enumerate
    types = strata_enumerate(n, d, cfg["variant"])
    return {"shape": {"n": n, "d": list(d)}, "count": len(types), "types": types, "ok": True}


def task_dimbound(n, d, cfg):
    from .quiver import dimension_bound_batch, dimension_bound_check
    if cfg.get("kappas"):
        kap = [tuple(int(x) for x in part.split(",") if x) for part in cfg["kappas"].split(";")]
        lhs, rhs, ok = dimension_bound_check(d, kap, cfg["variant"])
        return {"shape": {"n": n, "d": list(d)}, "kappas": [list(k) for k in kap], "lhs": lhs, "rhs": rhs,
                "holds": ok, "ok": ok}
    res = dimension_bound_batch(d, cfg["variant"])
    res["shape"] = {"n": n, "d": list(d)}
    res["ok"] = res["holds"]
    return res


def task_spectral(n, d, cfg):
    from .poisson import classical_generator, spectral_pair
    from .lie import build_chainsaw_lie
    if cfg.get("a") is not None:
        a = list(parse_vector(cfg["a"]))
        b = list(parse_vector(cfg["b"] or ""))
        res = spectral_pair(a, b)
        return {"P": res["P"], "Q": res["Q"], "b": res["b"], "expansion": res["expansion"],
                "recursion_ok": res["recursion_ok"], "ok": res["ok"]}
    k = d[n - 1] if n > 1 else d[0]
    node = n - 1
    alg = build_chainsaw_lie(n, d, "eprime")
    a = [classical_generator(alg, "a", node, (r,)) for r in range(1, k + 1)]
    b = [classical_generator(alg, "b", node, (s,)) for s in range(2 * k)]
    res = spectral_pair(a, b)
    return {"shape": {"n": n, "d": list(d)}, "node": node, "symbolic": True,
            "recursion_ok": res["recursion_ok"], "ok": res["ok"]}


def task_walls(cfg):
    from .quiver import wall_membership
    zeta = parse_vector(cfg["zeta"])
    if cfg.get("n") and len(zeta) != cfg["n"]:
        raise ValueError(f"--zeta has length {len(zeta)} but --n is {cfg['n']}")
    hits = wall_membership(zeta, cfg["mode"] or "affine")
    return {"zeta": list(zeta), "mode": cfg["mode"] or "affine", "walls": hits,
            "status": "on walls" if hits else "off walls", "ok": True}


def _run_task(args):
    name, payload, cfg = args
    if name == "verify":
        kind, n, d = payload
        return task_verify(kind, n, d, cfg)
    fn = TASKS[name]
    n, d = payload
    return fn(n, d, cfg)


TASKS = {"character": task_character, "stability": task_stability, "moment": task_moment,
         "collapse": task_collapse, "strata": task_strata, "dimbound": task_dimbound,
         "spectral-pair": task_spectral}


# ---------------------------------------------------------------- argparse

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="number of nodes (defaults to len(d))")
    common.add_argument("--d", action="append", type=parse_vector, default=None,
                        help="dimension vector like 0,1,1 (repeat for several shapes)")
    common.add_argument("--mu", type=parse_vector, default=None, help="deformation parameter")
    common.add_argument("--trunc", type=int, default=None, help="truncation order or index bound")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default $ZASTAVA_JOBS or 1)")
    common.add_argument("--config", default=None, help="JSON file of defaults; explicit flags win")

    p = argparse.ArgumentParser(prog="zastava", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="relation suites")
    vsub = v.add_subparsers(dest="suite", required=True)
    for name in ("poisson", "quantum", "jacobi"):
        vsub.add_parser(name, parents=[common])
    y = vsub.add_parser("yangian", parents=[common])
    y.add_argument("--mode", choices=("finite", "affine"), default=None)
    y.add_argument("--beta", type=Q, default=None)
    y.add_argument("--classical", action="store_true", default=None)

    c = sub.add_parser("character", parents=[common])
    c.add_argument("--compare-y", action="store_true", default=None, dest="compare_y")
    for name in ("stability", "moment", "collapse"):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("--rep", default=None, help="ChainsawRep JSON file")
        q.add_argument("--example", choices=("smoothness",), default=None)
        q.add_argument("--field", default=None, help="QQ or GF(p) for random representations")
        q.add_argument("--variant", choices=("cyclic", "open"), default=None)
        q.add_argument("--smooth", action="store_true", default=None, help="sample from the zero fiber")
    w = sub.add_parser("walls", parents=[common])
    w.add_argument("--zeta", type=str, required=False, default=None)
    w.add_argument("--mode", choices=("finite", "affine"), default=None)
    s = sub.add_parser("strata", parents=[common])
    s.add_argument("--variant", choices=("cyclic", "open"), default=None)
    db = sub.add_parser("dimbound", parents=[common])
    db.add_argument("--variant", choices=("cyclic", "open"), default=None)
    db.add_argument("--kappas", default=None, help="partitions per node, e.g. '2;1,1'")
    sp = sub.add_parser("spectral-pair", parents=[common])
    sp.add_argument("--a", default=None, help="power sums a_1..a_d")
    sp.add_argument("--b", default=None, help="b_0, b_1, ...")
    return p


def resolve_config(ns):
    """Merge defaults < config file < explicit flags."""
    cfg = dict(DEFAULTS)
    if ns.config:
        with open(ns.config) as fh:
            file_cfg = json.load(fh)
        for k, v in file_cfg.items():
            key = k.replace("-", "_")
            if key == "d":
                v = [parse_vector(x) for x in (v if isinstance(v, list) and v and isinstance(v[0], (list, str)) else [v])]
            elif key in ("mu",) and v is not None:
                v = parse_vector(v)
            cfg[key] = v
    for k, v in vars(ns).items():
        if v is not None and k != "config":
            cfg[k] = v
    cfg.setdefault("d", [])
    if cfg.get("d") is None:
        cfg["d"] = []
    if cfg.get("jobs") is None:
        cfg["jobs"] = int(os.environ.get("ZASTAVA_JOBS", "1") or 1)
    if cfg["jobs"] < 1:
        raise ValueError("--jobs must be positive")
    if cfg.get("mu") is not None:
        cfg["mu"] = tuple(cfg["mu"])
    return cfg


def _public_config(cfg):
    """Config echoed in the output; parallelism is excluded so output does not depend on it."""
    skip = {"jobs", "config", "format"}
    return jsonable({k: v for k, v in sorted(cfg.items()) if k not in skip and v is not None})


def run(argv=None):
    """Returns (exit code, payload dict, output format)."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    fmt = ns.format or "json"
    try:
        cfg = resolve_config(ns)
        fmt = cfg["format"]
        command = ns.command if ns.command != "verify" else f"verify {ns.suite}"
        if ns.command == "walls":
            if not cfg.get("zeta"):
                raise ValueError("walls needs --zeta")
            results = [task_walls(cfg)]
        else:
            if ns.command == "verify":
                tasks = [("verify", (ns.suite, n, d), cfg) for n, d in _shapes(cfg)]
            elif ns.command in ("stability", "moment", "collapse"):
                tasks = [(ns.command, t, cfg) for t in _rep_targets(cfg)]
            elif ns.command == "spectral-pair" and cfg.get("a") is not None:
                tasks = [(ns.command, (None, None), cfg)]
            else:
                tasks = [(ns.command, t, cfg) for t in _shapes(cfg)]
            if cfg["jobs"] > 1 and len(tasks) > 1:
                with Pool(min(cfg["jobs"], len(tasks))) as pool:
                    results = pool.map(_run_task, tasks)
            else:
                results = [_run_task(t) for t in tasks]
    except (ValueError, ArithmeticError, OSError) as exc:
        return 2, {"ok": False, "error": f"{type(exc).__name__}: {exc}"}, fmt
    ok = all(r.get("ok", False) for r in results)
    return (0 if ok else 1), {"command": command, "config": _public_config(cfg), "ok": ok,
                              "results": jsonable(results)}, fmt


def render_text(payload):
    if "error" in payload:
        return f"error: {payload['error']}"
    lines = [f"{payload['command']}: {'PASS' if payload['ok'] else 'FAIL'}"]
    for r in payload["results"]:
        if "report" in r:
            rep = r["report"]
            counts = {}
            for e in rep["entries"]:
                c = counts.setdefault(e["relation"], [0, 0])
                c[0 if e["status"] == "pass" else 1] += 1
            lines.append(f"  {rep['title']}: {'PASS' if rep['ok'] else 'FAIL'}")
            for rel, (p, f) in sorted(counts.items()):
                lines.append(f"    {rel}: {p} pass, {f} fail")
        elif "status" in r:
            lines.append(f"  {r['status']}")
            for w in r["walls"]:
                lines.append(f"    {w['wall']} nodes {w['nodes']}")
        else:
            keys = [k for k in sorted(r) if k not in ("rep", "types", "coefficients")]
            lines.append("  " + ", ".join(f"{k}={json.dumps(r[k], sort_keys=True)}" for k in keys))
    return "\n".join(lines)


def main(argv=None):
    code, payload, fmt = run(argv)
    if fmt == "text":
        print(render_text(payload))
    else:
        print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
