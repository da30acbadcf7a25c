"""Batch command-line front end: JSON in, deterministic JSON out.

Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
bad input or violated preconditions.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
from itertools import permutations as iter_permutations

from .cellcomplex import (
    complex_from_json,
    complex_to_json,
    subcomplex_leq,
)
from .cycle import (
    fundamental_cycle_check,
    multiplicity,
    permutation_cycle_check,
    staircase_partition_2d,
)
from .errors import CellresError, InputError, PreconditionError
from .hull import embed_in_simplex, hull_complex, scarf_complex, taylor_complex
from .monomial import (
    MonomialIdeal,
    ideal_from_json,
    is_generic,
    lcm_lattice,
    minimize,
    pure_power_exponents,
)
from .residue import (
    annihilator_contains,
    chain_maps,
    duality_counterexample,
    residue_current,
    verify_chain_maps,
)
from .resolution import (
    cellular_complex,
    exactness_witness,
    minimality_witness,
    reduced_homology_ranks,
)

SCHEMA = "cellres/1"

SUBCOMMANDS = (
    "generators",
    "hull",
    "scarf",
    "resolve",
    "check-exact",
    "check-minimal",
    "residue",
    "compare",
    "annihilator",
    "duality-check",
    "multiplicity",
    "fundamental-cycle",
    "partition",
)

_JOB_KEYS = {"ideal", "complex_source", "options"}
_OPTION_KEYS = {"t", "box", "permutations", "seed"}


def _json_ready(value):
    if isinstance(value, dict):
        return {str(_key(k)): _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return k


def _parse_vector(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected a comma-separated integer vector: {text}") from exc


def _parse_permutations(text):
    return [
        [int(x) for x in block.split(",")] for block in text.split(";") if block
    ]


def _load_job(args):
    if args.input:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = sys.stdin.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at position {exc.pos}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise InputError("top-level JSON must be an object")
    if "ideal" in obj:
        unknown = set(obj) - _JOB_KEYS
        if unknown:
            raise InputError(f"unknown job keys: {sorted(unknown)}")
        options = obj.get("options", {})
        if not isinstance(options, dict):
            raise InputError("options must be an object")
        unknown = set(options) - _OPTION_KEYS
        if unknown:
            raise InputError(f"unknown option keys: {sorted(unknown)}")
        ideal = ideal_from_json(obj["ideal"])
        source = obj.get("complex_source")
        return ideal, source, options
    return ideal_from_json(obj), None, {}


def _build_complex(source, M: MonomialIdeal, t):
    if source == "hull":
        return embed_in_simplex(hull_complex(M, t), pure_power_exponents(M))
    if source == "scarf":
        return scarf_complex(M, t)
    if source == "taylor":
        return taylor_complex(M)
    if source and source.startswith("file:"):
        path = source[len("file:"):]
        with open(path, "r", encoding="utf-8") as handle:
            try:
                obj = json.load(handle)
            except json.JSONDecodeError as exc:
                raise InputError(
                    f"malformed complex JSON at position {exc.pos}: {exc.msg}"
                ) from exc
        return complex_from_json(obj)
    raise InputError(f"unknown complex source: {source}")


_WORKER_COMPLEX = None


def _init_worker(X):
    global _WORKER_COMPLEX
    _WORKER_COMPLEX = X


def _beta_fails(beta):
    sub = subcomplex_leq(_WORKER_COMPLEX, beta)
    if sub.dim < 0:
        return False
    return any(reduced_homology_ranks(sub))


def _exactness_witness_parallel(F, X, M, jobs):
    vertex_ideal = minimize([X.vertex_label(v) for v in X.vertices])
    if vertex_ideal.generators != M.generators:
        raise PreconditionError("vertex labels do not generate the given ideal")
    degrees = sorted(lcm_lattice(M) | {(0,) * M.n})
    with multiprocessing.Pool(jobs, initializer=_init_worker, initargs=(X,)) as pool:
        failures = pool.map(_beta_fails, degrees)
    for beta, failed in zip(degrees, failures):
        if failed:
            return beta
    return None


def _signed_matrix_json(matrix):
    return [
        [{"sign": cell.sign, "exp": list(cell.exp)} for cell in row]
        for row in matrix
    ]


def _cmd_generators(M, X, args, options):
    return {"n": M.n, "generators": [list(g) for g in M.generators]}, 0


def _cmd_multiplicity(M, X, args, options):
    return {"multiplicity": multiplicity(M)}, 0


def _cmd_hull(M, X, args, options):
    return complex_to_json(hull_complex(M, args.t)), 0


def _cmd_scarf(M, X, args, options):
    return complex_to_json(scarf_complex(M, args.t)), 0


def _cmd_resolve(M, X, args, options):
    F = cellular_complex(X)
    levels = {k: [list(fid) for fid in F.basis(k)] for k in sorted(F.levels)}
    matrices = {k: _signed_matrix_json(F.matrix(k)) for k in sorted(F.matrices)}
    return {"levels": levels, "matrices": matrices}, 0


def _cmd_check_exact(M, X, args, options):
    F = cellular_complex(X)
    if args.jobs and args.jobs > 1:
        witness = _exactness_witness_parallel(F, X, M, args.jobs)
    else:
        witness = exactness_witness(F, X, M)
    ok = witness is None
    return {"ok": ok, "witness": list(witness) if witness else None}, 0 if ok else 1


def _cmd_check_minimal(M, X, args, options):
    F = cellular_complex(X)
    witness = minimality_witness(F)
    ok = witness is None
    payload = {
        "ok": ok,
        "witness": [list(witness[0]), list(witness[1])] if witness else None,
    }
    return payload, 0 if ok else 1


def _residue(M, X):
    return residue_current(X, pure_power_exponents(M))


def _cmd_residue(M, X, args, options):
    R = _residue(M, X)
    entries = [
        {"face": list(fid), "sign": c.sign, "alpha": list(c.alpha)}
        for fid, c in sorted(R.entries.items())
    ]
    return {"entries": entries}, 0


def _cmd_compare(M, X, args, options):
    b = pure_power_exponents(M)
    maps = chain_maps(X, b)
    ok, witness = verify_chain_maps(X, b, maps)
    payload = {
        "maps": {k: _signed_matrix_json(maps.levels[k]) for k in sorted(maps.levels)},
        "row_bases": {k: [list(f) for f in maps.row_bases[k]] for k in maps.row_bases},
        "col_bases": {k: [list(f) for f in maps.col_bases[k]] for k in maps.col_bases},
        "ok": ok,
        "witness": _json_ready(list(witness)) if witness else None,
    }
    return payload, 0 if ok else 1


def _cmd_annihilator(M, X, args, options):
    R = _residue(M, X)
    components = [
        {"face": list(fid), "alpha": list(c.alpha)}
        for fid, c in sorted(R.entries.items())
    ]
    payload = {"components": components}
    if args.beta is not None:
        beta = _parse_vector(args.beta)
        payload["beta"] = list(beta)
        payload["annihilates"] = annihilator_contains(R, beta)
    return payload, 0


def _cmd_duality_check(M, X, args, options):
    R = _residue(M, X)
    box = None
    if args.box is not None:
        box = _parse_vector(args.box)
    elif "box" in options:
        box = tuple(options["box"])
    counterexample = duality_counterexample(R, M, box)
    ok = counterexample is None
    payload = {
        "ok": ok,
        "counterexample": list(counterexample) if counterexample else None,
    }
    return payload, 0 if ok else 1


def _cmd_fundamental_cycle(M, X, args, options):
    n = M.n
    R = _residue(M, X)
    result = fundamental_cycle_check(X, M, R=R)
    if args.permutations is not None:
        perms = _parse_permutations(args.permutations)
    elif "permutations" in options:
        perms = [list(p) for p in options["permutations"]]
    elif n <= 4:
        perms = [list(p) for p in iter_permutations(range(1, n + 1))]
    else:
        perms = []
    asserted = is_generic(M)
    per_permutation = {}
    for p in perms:
        sub = permutation_cycle_check(X, M, p, allow_nongeneric=True, R=R)
        per_permutation[",".join(str(x) for x in p)] = {
            "lhs": sub["lhs"],
            "expected": sub["expected"],
            "ok": sub["ok"],
            "asserted": asserted,
        }
    payload = {
        "lhs": result["lhs"],
        "n_factorial_times_m": result["rhs"],
        "ok": result["ok"],
        "per_permutation": per_permutation,
    }
    return payload, 0 if result["ok"] else 1


def _cmd_partition(M, X, args, options):
    order = args.order or "P"
    rectangles = staircase_partition_2d(M, order)
    m = multiplicity(M)
    total = sum(r.area for r in rectangles)
    payload = {
        "order": order,
        "rectangles": [
            {"x": [r.x_lo, r.x_hi], "y": [r.y_lo, r.y_hi], "area": r.area}
            for r in rectangles
        ],
        "total_area": total,
        "multiplicity": m,
        "ok": total == m,
    }
    return payload, 0 if total == m else 1


_NEEDS_COMPLEX = {
    "resolve",
    "check-exact",
    "check-minimal",
    "residue",
    "compare",
    "annihilator",
    "duality-check",
    "fundamental-cycle",
}

_HANDLERS = {
    "generators": _cmd_generators,
    "hull": _cmd_hull,
    "scarf": _cmd_scarf,
    "resolve": _cmd_resolve,
    "check-exact": _cmd_check_exact,
    "check-minimal": _cmd_check_minimal,
    "residue": _cmd_residue,
    "compare": _cmd_compare,
    "annihilator": _cmd_annihilator,
    "duality-check": _cmd_duality_check,
    "multiplicity": _cmd_multiplicity,
    "fundamental-cycle": _cmd_fundamental_cycle,
    "partition": _cmd_partition,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cellres",
        description="Cellular resolutions and residue currents of Artinian "
        "monomial ideals, in exact arithmetic.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--input", help="read the JSON job from a file instead of stdin")
    parser.add_argument(
        "--complex",
        default=None,
        help="complex source: hull, scarf, taylor, or file:<path> (default hull)",
    )
    parser.add_argument("--t", type=int, default=None, help="override the lift base")
    parser.add_argument(
        "--seed", type=int, default=None,
        help="seed for randomized cross-checks (reserved; the shipped "
        "subcommands are deterministic)",
    )
    parser.add_argument(
        "--jobs", type=int, default=1,
        help="worker processes for the per-degree exactness scan",
    )
    parser.add_argument("--beta", help="exponent vector for annihilator queries")
    parser.add_argument("--box", help="box override for the duality scan")
    parser.add_argument("--order", choices=("P", "Q"), help="partition order")
    parser.add_argument(
        "--permutations",
        help='permutation list for fundamental-cycle, e.g. "1,2;2,1"',
    )
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        _emit({"error": "--jobs must be at least 1"})
        return 2
    try:
        M, job_source, options = _load_job(args)
        t = args.t if args.t is not None else options.get("t")
        args.t = t
        source = args.complex or job_source or "hull"
        X = None
        if args.subcommand in _NEEDS_COMPLEX:
            X = _build_complex(source, M, t)
        payload, code = _HANDLERS[args.subcommand](M, X, args, options)
    except (InputError, PreconditionError, CellresError, OSError) as exc:
        _emit({"error": str(exc)})
        return 2
    _emit(payload)
    return code


def _emit(payload):
    payload = dict(payload)
    payload["schema"] = SCHEMA
    sys.stdout.write(json.dumps(_json_ready(payload), sort_keys=True) + "\n")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
