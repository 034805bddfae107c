"""Command-line driver.

Every command turns its arguments into a normalized parameter dict, computes
a JSON payload (through the on-disk cache unless ``--no-cache``) and prints
it.  Exit codes: 0 success, 2 infeasible request, 3 a check failed, 4 I/O or
schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bimodule import check_bialgebra, check_twisted
from .cache import Cache, CacheCorruption, default_dir
from .functionals import (
    CONES, SchemaError, cone_check, fstr, functional_from_json, functional_gauge, graph_function_of, mix,
    mix_closed_form_check, parse_fraction, phi_zero, psi_zero,
)
from .graphs import GRAPHS, GraphBoundError, build_graph, gl_gauge_formula, similarity_gauge
from .orbits import MODES, InfeasibleError, enumerate_orbits
from .parabolic import mackey_check

EXIT_OK, EXIT_INFEASIBLE, EXIT_FAILED, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


# -- computations (params -> payload), also used by --verify-cache -------------------

def _split(s: str) -> list[int]:
    try:
        a, b = (int(x) for x in s.split(","))
    except ValueError as exc:
        raise UsageError(f"expected 'i,j', got {s!r}") from exc
    return [a, b]


def compute_orbits(p: dict) -> dict:
    T = enumerate_orbits(p["kind"], p["n"], p["q"], p["mode"])
    doc = T.to_json()
    doc["count"] = len(T.entries)
    doc["total"] = T.total()
    return doc


def compute_mackey(p: dict) -> dict:
    r = mackey_check(p["setting"], p["q"], p["n"], tuple(p["l"]), tuple(p["lprime"]))

    def pair(k):
        return [str(k[0][0]), str(k[0][1]), str(k[1][0]), str(k[1][1])]

    keys = sorted(set(r.lhs) | set(r.rhs), key=pair)
    return {
        "schema": "mackey-report/1", **p, "equal": r.equal, "weyl_reps": len(r.weyl_reps),
        "entries": [{"y_prime": pair(k)[:2], "y": pair(k)[2:], "lhs": fstr(r.lhs.get(k, 0)),
                     "rhs": fstr(r.rhs.get(k, 0))} for k in keys],
        "discrepancies": [{"y_prime": pair(k)[:2], "y": pair(k)[2:], "lhs": fstr(a), "rhs": fstr(b)}
                          for k, a, b in r.discrepancies()],
    }


def compute_axioms(p: dict) -> dict:
    fn = check_bialgebra if p["which"] == "bialgebra" else check_twisted
    rep = fn(p["q"], p["maxdeg"])
    return {**rep.to_json(), "ok": rep.ok}


def compute_graph(p: dict) -> dict:
    t = None if p["t"] is None else parse_fraction(p["t"])
    g = build_graph(p["which"], p["q"], p["levels"], t)
    doc = g.to_json()
    if p["gauge"]:
        if p["gauge"] == "functional":
            side = {"glb0": "A", "ub0": "B"}.get(p["which"])
            if side is None:
                raise UsageError("functional gauge is defined for glb0 and ub0")
            res = functional_gauge(side, p["q"], p["levels"])
        else:
            res = similarity_gauge(g, build_graph(p["gauge"], p["q"], p["levels"], t))
        doc["gauge"] = {"against": p["gauge"], **res.to_json()}
        doc["ok"] = res.ok
        if p["which"] == "glb0" and p["gauge"] == "yhl" and res.ok:
            doc["gauge"]["formula_match"] = all(v == gl_gauge_formula(k, p["q"]) for k, v in res.gauge.items())
            doc["ok"] = doc["gauge"]["formula_match"]
    return doc


def _resolve_functional(ref, side: str, q: int, N: int):
    if isinstance(ref, dict):
        return functional_from_json(ref)
    if ref == "builtin:phi0":
        return phi_zero(q, N)
    if ref == "builtin:psi0":
        return psi_zero(q, N)
    raise UsageError(f"unknown functional {ref!r}")


def compute_harmonic(p: dict) -> dict:
    side = "A" if p["cone"] in ("F", "F0") else "B"
    phi = _resolve_functional(p["phi"], side, p["q"], p["levels"])
    rep = cone_check(phi, p["cone"], p["levels"])
    out = {**rep.to_json(), "functional": phi.to_json()}
    if p.get("graph_function"):
        g = functional_gauge(side, phi.q, p["levels"])
        out["graph_function"] = {v.label(): fstr(x) for v, x in graph_function_of(phi, g.gauge).items()}
    return out


def compute_mix(p: dict) -> dict:
    q, N = p["q"], p["levels"]
    phi = _resolve_functional(p["phi"], "A", q * q, N)
    psi = _resolve_functional(p["psi"], "B", q, N)
    rows = []
    ok = True
    for s in p["s"]:
        m = mix(phi, psi, s, N)
        rep = cone_check(m, "Ftilde0" if p["nilpotent"] else "Ftilde", N)
        row = {"s": s, "values": m.to_json()["levels"], "cone": rep.to_json()}
        ok &= rep.ok
        if psi.provenance.get("builtin") == "psi0":
            zero_vals = [phi.values.get(_zero_A(k), Fraction(0)) for k in range(N + 1)]
            cf = mix_closed_form_check(zero_vals, s, q, N)
            row["closed_form"] = cf.to_json()
            ok &= cf.ok
        rows.append(row)
    return {"schema": "mix-report/1", "q": q, "levels": N, "ok": ok, "sweep": rows}


def _zero_A(k: int):
    from .bimodule import chi
    return chi("GL", (1,) * k)


COMPUTE = {
    "orbits": compute_orbits, "mackey": compute_mackey, "axioms": compute_axioms,
    "graph": compute_graph, "harmonic": compute_harmonic, "mix": compute_mix,
}


def recompute(kind: str, params: dict):
    return COMPUTE[kind](params)


# -- argument handling -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational_arg(s: str) -> str:
    return fstr(parse_fraction(s))


def _functional_arg(s: str):
    if s.startswith("builtin:"):
        return s
    try:
        return json.loads(Path(s).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read {s}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{s} is not JSON: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hlmackey", description="Exact orbit, parabolic and harmonic-functional computations.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--cache-dir", default=None, help="cache directory (default: $HLMACKEY_CACHE_DIR)")
    ap.add_argument("--no-cache", action="store_true")
    ap.add_argument("--verify-cache", action="store_true", help="recompute a random 10%% of cache entries")
    ap.add_argument("--output", "-o", default=None, help="write JSON here instead of stdout")
    ap.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; work runs in one process")
    ap.add_argument("--seed", type=int, default=None, help="seed for --verify-cache sampling")
    sub = ap.add_subparsers(dest="command")

    s = sub.add_parser("orbits")
    s.add_argument("--kind", choices=["gl", "u"], required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True, help="gl(n) or u(2n)")
    s.add_argument("--mode", choices=MODES, default="exhaustive")

    s = sub.add_parser("mackey")
    s.add_argument("--setting", choices=["gl", "u"], required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--l", required=True, help="split i,j")
    s.add_argument("--lprime", required=True, help="split i,j")

    s = sub.add_parser("axioms")
    s.add_argument("--which", choices=["bialgebra", "twisted"], required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--maxdeg", type=int, required=True)

    s = sub.add_parser("graph")
    s.add_argument("--which", choices=GRAPHS, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--t", type=_rational_arg, default=None)
    s.add_argument("--gauge", choices=list(GRAPHS) + ["functional"], default=None)

    s = sub.add_parser("harmonic")
    s.add_argument("--phi", type=_functional_arg, required=True, help="builtin:phi0, builtin:psi0 or a JSON file")
    s.add_argument("--cone", choices=CONES, required=True)
    s.add_argument("--q", type=int, required=True, help="field order for A, base q for B")
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--graph-function", action="store_true")

    s = sub.add_parser("mix")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--s", required=True, help="rational or comma-separated list")
    s.add_argument("--phi", type=_functional_arg, default="builtin:phi0")
    s.add_argument("--psi", type=_functional_arg, default="builtin:psi0")
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--any-support", action="store_true", help="check Ftilde instead of Ftilde0")
    return ap


def params_of(args) -> dict:
    c = args.command
    if c == "orbits":
        if args.kind == "u" and args.q % 2 == 0:
            raise UsageError("unitary commands need odd q")
        return {"kind": args.kind.upper(), "q": args.q, "n": args.n, "mode": args.mode}
    if c == "mackey":
        if args.setting == "u" and args.q % 2 == 0:
            raise UsageError("unitary commands need odd q")
        return {"setting": args.setting.upper(), "q": args.q, "n": args.n,
                "l": _split(args.l), "lprime": _split(args.lprime)}
    if c == "axioms":
        if args.which == "twisted" and args.q % 2 == 0:
            raise UsageError("unitary commands need odd q")
        return {"which": args.which, "q": args.q, "maxdeg": args.maxdeg}
    if c == "graph":
        return {"which": args.which, "q": args.q, "levels": args.levels, "t": args.t, "gauge": args.gauge}
    if c == "harmonic":
        return {"phi": args.phi, "cone": args.cone, "q": args.q, "levels": args.levels,
                "graph_function": args.graph_function}
    if c == "mix":
        if args.q % 2 == 0:
            raise UsageError("unitary commands need odd q")
        return {"q": args.q, "s": [_rational_arg(x) for x in args.s.split(",")], "phi": args.phi,
                "psi": args.psi, "levels": args.levels, "nilpotent": not args.any_support}
    raise UsageError("no command given")


def _passed(doc: dict) -> bool:
    for key in ("equal", "ok"):
        if key in doc:
            return bool(doc[key])
    return True


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _error(code: int, kind: str, msg: str) -> int:
    sys.stdout.write(json.dumps({"error": kind, "message": msg, "exit_code": code}, sort_keys=True) + "\n")
    return code


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cache = Cache(Path(args.cache_dir) if args.cache_dir else default_dir())
        if args.verify_cache:
            rep = cache.verify(recompute, 0.1, args.seed)
            rep["ok"] = not rep["mismatches"] and not rep["corrupt"]
            _emit({"schema": "cache-verify/1", **rep}, args.output)
            if rep["corrupt"]:
                return EXIT_IO
            return EXIT_OK if rep["ok"] else EXIT_FAILED
        params = params_of(args)
        if args.no_cache:
            payload = COMPUTE[args.command](params)
        else:
            payload = cache.get_or_compute(args.command, params, lambda: COMPUTE[args.command](params))
        doc = {"command": args.command, "version": __version__, "result": payload,
               "generated": datetime.now(timezone.utc).isoformat(timespec="seconds")}
        _emit(doc, args.output)
        return EXIT_OK if _passed(payload) else EXIT_FAILED
    except (InfeasibleError, GraphBoundError) as exc:
        return _error(EXIT_INFEASIBLE, "infeasible", str(exc))
    except (SchemaError, CacheCorruption, OSError) as exc:
        return _error(EXIT_IO, "io", str(exc))
    except UsageError as exc:
        return _error(EXIT_IO, "usage", str(exc))
    except ValueError as exc:
        return _error(EXIT_INFEASIBLE, "infeasible", str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
