"""Command-line front end.

    suslinkit suslin --n 3 --show psi --vec unit
    suslinkit verify --n 2..4 --mode symbolic
    suslinkit spin-check --in g.json
    suslinkit orbit-witness verify witness.json

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
JSON is the stable output format; ``--format text`` is for people.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import core, jsonio, spin, witness
from .matrix import Matrix, format_matrix
from .ring import PolyRing, Quadric, sample_quadric_point

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"bad --n value {text!r}; use N or LO..HI")
    if lo < 1 or hi < lo:
        raise ConfigError(f"empty or invalid range {text!r}")
    return list(range(lo, hi + 1))


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(Fraction(t) for t in text.split(","))
    except ValueError:
        raise ConfigError(f"bad vector {text!r}; use comma-separated rationals")


def _emit(payload, args, text: str | None = None):
    out = jsonio.dumps(payload) if args.format == "json" or text is None else text + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# -- suslin ------------------------------------------------------------------------


def _vectors_for(args, n: int):
    if args.a or args.b:
        if not (args.a and args.b):
            raise ConfigError("--a and --b must be given together")
        a, b = _parse_vector(args.a), _parse_vector(args.b)
        if len(a) != n or len(b) != n:
            raise ConfigError(f"--a/--b must have length {n}")
        return a, b, None
    vec = "generic" if args.generic else args.vec
    if vec == "unit":
        u = core.unit_basis_vector(n)
        return u.a, u.b, u.ring
    if vec == "sample":
        p = sample_quadric_point(n, args.seed)
        return p.xs, p.ys, None
    ring = Quadric(n) if args.ring == "quadric" or args.show == "psi" else PolyRing(n)
    return tuple(ring.xs()), tuple(ring.ys()), ring


def cmd_suslin(args) -> int:
    n = args.n_single
    show = args.show
    if show in ("sigma", "psi_const", "tau"):
        m = 2 ** (n - 1) if n > 1 else 2
        mat = {"sigma": core.sigma, "psi_const": core.psi, "tau": core.tau}[show](m)
    elif show == "J":
        mat = core.J_matrix(n)
    elif show == "E":
        mat = core.E_matrix(n)
    else:
        a, b, ring = _vectors_for(args, n)
        if show == "alpha":
            mat = core.suslin_alpha(a, b, ring)
        elif show == "alphabar":
            mat = core.suslin_alpha_bar(a, b, ring)
        elif show == "phi":
            mat = spin.phi_embed(a, b, ring)
        else:
            try:
                mat = core.psi_degree_map(core.UnitVector(a, b, ring))
            except core.NotAUnitVector as exc:
                raise ConfigError(f"Psi_n needs a unit vector: {exc}")
    payload = {"command": "suslin", "n": n, "show": show, "matrix": jsonio.matrix_to_json(mat)}
    _emit(payload, args, format_matrix(mat))
    return EXIT_OK


# -- verify ------------------------------------------------------------------------

SUITES = {
    "suslin": ("det", "product", "transpose", "J", "E", "EJE"),
    "degree": ("psi-class", "pfaffian-one", "det-one", "psi-unit"),
    "clifford": ("clifford", "involution-on-V", "involution-anti"),
}
IDENTITIES = tuple(i for names in SUITES.values() for i in names)


def _run_one(job):
    n, mode, seeds, identity = job
    out = []
    if identity is None or identity in SUITES["suslin"]:
        if n >= 2:
            out += core.verify_suslin_suite(n, mode, seeds, only=identity)
    if identity is None or identity in SUITES["degree"]:
        out += core.verify_degree_map_suite(n, mode, seeds, only=identity)
    if identity is None or identity in SUITES["clifford"]:
        out += spin.verify_clifford_suite(n, mode, seeds, only=identity)
    return out


def _threads() -> int:
    raw = os.environ.get("SUSLIN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"SUSLIN_THREADS must be an integer, got {raw!r}")


def cmd_verify(args) -> int:
    ns = _parse_range(args.n)
    mode = args.mode
    if args.ring == "rational":
        mode = "sampled"
    if mode == "sampled" and args.seeds < 1:
        raise ConfigError("sampled mode needs --seeds >= 1")
    identity = args.identity
    if identity is not None and identity not in IDENTITIES:
        raise ConfigError(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")
    jobs = [(n, mode, args.seeds, identity) for n in ns]
    workers = min(_threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_one, jobs))
    else:
        chunks = [_run_one(j) for j in jobs]
    results = [r for chunk in chunks for r in chunk]
    if not results:
        raise ConfigError("no identity applies to the requested n range")
    ok = all(r["status"] == "pass" for r in results)
    payload = {"command": "verify", "mode": mode, "seeds": args.seeds,
               "results": results, "all_pass": ok}
    text = "\n".join(
        f"{r['status'].upper():4}  n={r['n']:<2} {r['mode']:<8} {r['identity']:<18} {r['statement']}"
        for r in results
    )
    _emit(payload, args, text)
    return EXIT_OK if ok else EXIT_FAIL


# -- spin-check --------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}")


def cmd_spin_check(args) -> int:
    data = _load_json(args.input)
    try:
        g = jsonio.matrix_from_json(data["g"] if "g" in data else data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed matrix file: {exc}")
    try:
        elem = spin.spin_certify(g)
    except (spin.SpinError, ValueError) as exc:
        payload = {"command": "spin-check", "certified": False, "error": type(exc).__name__,
                   "message": str(exc)}
        _emit(payload, args, f"REJECTED {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    payload = {"command": "spin-check", "certified": True, "element": jsonio.spin_to_json(elem)}
    _emit(payload, args, "CERTIFIED\nso_matrix:\n" + format_matrix(elem.so_matrix))
    return EXIT_OK


# -- orbit-witness -----------------------------------------------------------------


def _witness_E(data, ring):
    if "factors" in data:
        size = int(data["size"]) if "size" in data else None
        facs = tuple((f[0], f[1], jsonio.elem_from_json(f[2], ring)) for f in data["factors"])
        return witness.ElementaryWitness(size, facs)
    return jsonio.matrix_from_json(data["matrix"])


def check_witness(data: dict) -> tuple[bool, str | None]:
    """Run a witness record; returns (verified, failure reason)."""
    flavor = data["flavor"]
    if flavor in ("W_E", "W_SL", "S_sim"):
        M = jsonio.matrix_from_json(data["M"])
        N = jsonio.matrix_from_json(data["N"])
        i = int(data["i"])
        if "factors" in data and "size" not in data:
            data = {**data, "size": M.rows + N.rows + 2 * i}
        E = _witness_E(data, M.ring)
        try:
            ok = witness.verify_congruence_witness(M, N, i, E, flavor)
        except witness.FlavorMismatch as exc:
            return False, f"FlavorMismatch: {exc}"
        return ok, None if ok else "CongruenceMismatch"
    if flavor == "factorization":
        target = jsonio.unit_vector_from_json(data["target"])
        try:
            witness.factorization_check(
                jsonio.matrix_from_json(data["phi"]),
                jsonio.matrix_from_json(data["lam"]),
                [jsonio.matrix_from_json(e) for e in data.get("eps", [])],
                jsonio.matrix_from_json(data["s"]),
                target,
            )
        except witness.WitnessError as exc:
            return False, f"{type(exc).__name__}: {exc}"
        return True, None
    raise ConfigError(f"unknown witness flavor {flavor!r}")


def cmd_orbit_witness(args) -> int:
    path = args.input or args.file
    if not path:
        raise ConfigError("orbit-witness verify needs a witness file")
    data = _load_json(path)
    records = data if isinstance(data, list) else [data]
    results = []
    for k, rec in enumerate(records):
        try:
            ok, reason = check_witness(rec)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed witness record {k}: {exc}")
        entry = {"index": k, "flavor": rec["flavor"], "verified": ok}
        if reason:
            entry["error"] = reason
        if "expected" in rec:
            entry["expected"] = bool(rec["expected"])
            entry["matches_expected"] = ok == bool(rec["expected"])
        results.append(entry)
    all_ok = all(r["verified"] for r in results)
    payload = {"command": "orbit-witness", "results": results, "all_verified": all_ok}
    text = "\n".join(
        f"{'OK  ' if r['verified'] else 'FAIL'} #{r['index']} {r['flavor']} {r.get('error', '')}".rstrip()
        for r in results
    )
    _emit(payload, args, text)
    return EXIT_OK if all_ok else EXIT_FAIL


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="suslinkit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("suslin", parents=[common], help="print structured matrices")
    s.add_argument("--n", type=int, required=True, dest="n_single")
    s.add_argument("--show", required=True,
                   choices=("alpha", "alphabar", "phi", "psi", "J", "E", "sigma", "psi_const", "tau"))
    s.add_argument("--vec", choices=("unit", "generic", "sample"), default="generic")
    s.add_argument("--generic", action="store_true", help="same as --vec generic")
    s.add_argument("--ring", choices=("quadric", "free"), default="quadric")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--a", help="comma-separated rational vector")
    s.add_argument("--b", help="comma-separated rational vector")
    s.set_defaults(func=cmd_suslin)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--n", required=True, help="N or LO..HI")
    v.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    v.add_argument("--ring", choices=("quadric", "rational"), default="quadric")
    v.add_argument("--seeds", type=int, default=20)
    v.add_argument("--identity")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("spin-check", parents=[common], help="certify a Spin element")
    c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_spin_check)

    w = sub.add_parser("orbit-witness", parents=[common], help="verify witness files")
    w.add_argument("action", choices=("verify",))
    w.add_argument("file", nargs="?")
    w.add_argument("--in", dest="input")
    w.set_defaults(func=cmd_orbit_witness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n_single", 1) is not None and getattr(args, "n_single", 1) < 1:
        parser.error("--n must be >= 1")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"suslinkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
