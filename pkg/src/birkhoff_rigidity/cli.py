"""Command-line interface: ``birkhoff {ortho,graph,rigidity,corpus}``.

Exit codes: 0 success, 1 failed corpus claims, 2 bad input, 3 indeterminate
orthogonality, 4 weight or operator is not a multiplier, 5 operator is not
isometric (including eigenvalue mismatches along a Birkhoff edge).
``BIRKHOFF_TOL`` overrides the default decision tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus
from .birkhoff import (
    DEFAULT_TOL,
    UnsupportedVariant,
    Verdict,
    birkhoff_test,
    dual_orthogonality,
)
from .function_space import FunctionSpaceModel, ModelError, model_from_norm_only
from .graph import build_graph, export_dot
from .norms import NormError, complex_matrix_from_json, complex_vector_from_json, norm_from_json
from .rigidity import (
    EigenvalueMismatchError,
    NotAMultiplierError,
    NotIsometricError,
    rigidity_from_operator,
    rigidity_verdict,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INDETERMINATE = 3
EXIT_NOT_MULTIPLIER = 4
EXIT_NOT_ISOMETRIC = 5


class InputError(Exception):
    pass


class SpaceFile:
    """Parsed space file: a model plus named operators and weights."""

    def __init__(self, model: FunctionSpaceModel, operators: dict, weights: dict,
                 norm_only: bool):
        self.model = model
        self.operators = operators
        self.weights = weights
        self.norm_only = norm_only

    @classmethod
    def load(cls, path: str) -> "SpaceFile":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {path}: {exc}") from None
        return cls.from_json(doc)

    @classmethod
    def from_json(cls, doc) -> "SpaceFile":
        if not isinstance(doc, dict) or "space" not in doc:
            raise InputError("space file needs a top-level 'space' entry")
        space = doc["space"]
        try:
            if isinstance(space, dict) and "basis" in space:
                model, norm_only = FunctionSpaceModel.from_json(space), False
            else:
                model, norm_only = model_from_norm_only(norm_from_json(space)), True
            ops = {}
            for name, mat in _named(doc.get("operators")).items():
                T = complex_matrix_from_json(mat)
                if T.shape != (model.k, model.k):
                    raise InputError(f"operator {name!r} has shape {T.shape}, expected "
                                     f"{model.k}x{model.k}")
                ops[name] = T
            weights = {}
            for name, vals in _named(doc.get("weights")).items():
                w = complex_vector_from_json(vals)
                if w.shape != (model.m,):
                    raise InputError(f"weight {name!r} has {w.size} values, expected {model.m}")
                weights[name] = w
        except (NormError, ModelError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"invalid space file: {exc}") from None
        return cls(model, ops, weights, norm_only)


def _named(section) -> dict:
    if section is None:
        return {}
    if isinstance(section, dict):
        return section
    if isinstance(section, list):
        return {item["name"]: item.get("matrix", item.get("values")) for item in section}
    raise InputError("operators/weights must be an object or a list of named entries")


def _default_tol() -> float:
    raw = os.environ.get("BIRKHOFF_TOL")
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"BIRKHOFF_TOL is not a number: {raw!r}") from None
    if not tol > 0:
        raise InputError("BIRKHOFF_TOL must be positive")
    return tol


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _dump(obj, path: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _as_id(model: FunctionSpaceModel, value):
    key = tuple(value) if isinstance(value, list) else value
    return key if key in model.phase._index else None


def _resolve(model: FunctionSpaceModel, arg: str):
    """``("id", x)`` for a point id, ``("vec", array)`` for an inline vector."""
    try:
        value = json.loads(arg)
    except json.JSONDecodeError:
        value = arg
    pid = _as_id(model, value)
    if pid is not None:
        return "id", pid
    if isinstance(value, list):
        try:
            return "vec", complex_vector_from_json(value)
        except (NormError, TypeError, ValueError):
            pass
    raise InputError(f"{arg!r} is neither a point id nor a vector")


# ------------------------------------------------------------ commands


def _direction_json(res, dual_res):
    out = {
        "orthogonal": res.orthogonal,
        "verdict": res.verdict.value,
        "deficit": res.deficit,
        "norm": res.norm_e,
        "line_min": res.line.value,
        "t_star": _pair(res.line.t_star),
    }
    if dual_res is not None:
        out["dual"] = dual_res
    return out


def _dual_json(spec, a, b, tol):
    try:
        d = dual_orthogonality(spec, a, b, tol)
        return {"orthogonal": bool(d.orthogonal), "gap": float(d.gap), "method": d.method}
    except UnsupportedVariant as exc:
        return {"unsupported": str(exc)}


def cmd_ortho(args) -> int:
    space = SpaceFile.load(args.space_file)
    tol = args.tol if args.tol is not None else _default_tol()
    model = space.model
    ke, e = _resolve(model, args.e)
    kf, f = _resolve(model, args.f)
    if "id" in (ke, kf):
        spec, mode = model.dual_view(), "point-evaluations"
        e = model.point_evaluation(e) if ke == "id" else e
        f = model.point_evaluation(f) if kf == "id" else f
    else:
        spec, mode = model.norm, "vectors"
    try:
        ef = birkhoff_test(spec, e, f, tol)
        fe = birkhoff_test(spec, f, e, tol)
    except NormError as exc:
        raise InputError(str(exc)) from None
    dual_ef = _dual_json(spec, e, f, tol) if args.dual else None
    dual_fe = _dual_json(spec, f, e, tol) if args.dual else None
    report = {"mode": mode, "tol": tol,
              "e_f": _direction_json(ef, dual_ef), "f_e": _direction_json(fe, dual_fe)}
    if args.json:
        _dump(report, "-")
    else:
        for label, res, dres in (("e⊢f", ef, dual_ef), ("f⊢e", fe, dual_fe)):
            line = (f"{label}: {str(res.orthogonal).lower()}  (deficit {res.deficit:.6g}, "
                    f"min {res.line.value:.6g} vs norm {res.norm_e:.6g}, {res.verdict.value})")
            if dres is not None:
                if "unsupported" in dres:
                    line += "  dual: unsupported"
                else:
                    line += f"  dual: {str(dres['orthogonal']).lower()} (gap {dres['gap']:.6g})"
            print(line)
    if Verdict.INDETERMINATE in (ef.verdict, fe.verdict):
        return EXIT_INDETERMINATE
    return EXIT_OK


def cmd_graph(args) -> int:
    space = SpaceFile.load(args.space_file)
    tol = args.tol if args.tol is not None else _default_tol()
    try:
        g = build_graph(space.model, tol)
    except ModelError as exc:
        raise InputError(str(exc)) from None
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(export_dot(g))
    if args.json:
        _dump(g.to_json(), args.json)
    if args.json != "-":
        print(f"vertices {len(g.vertices)}  edges {len(g.edges)}  soft {len(g.soft_edges)}  "
              f"components {len(g.components)}")
        for k, comp in enumerate(g.components):
            print(f"  component {k}: {', '.join(str(v) for v in comp)}")
    return EXIT_OK


def cmd_rigidity(args) -> int:
    space = SpaceFile.load(args.space_file)
    tol = args.tol if args.tol is not None else _default_tol()
    model = space.model
    try:
        if args.weight is not None:
            if args.weight not in space.weights:
                raise InputError(f"no weight named {args.weight!r}")
            rep = rigidity_verdict(model, space.weights[args.weight], tol)
        else:
            if args.operator not in space.operators:
                raise InputError(f"no operator named {args.operator!r}")
            rep = rigidity_from_operator(model, space.operators[args.operator], tol)
    except NotAMultiplierError as exc:
        print(f"not a multiplier: {exc}", file=sys.stderr)
        return EXIT_NOT_MULTIPLIER
    except NotIsometricError as exc:
        print(f"not isometric: {exc}", file=sys.stderr)
        return EXIT_NOT_ISOMETRIC
    except EigenvalueMismatchError as exc:
        # isometry evidence passed but a Birkhoff edge joins distinct eigenvalues
        print(f"eigenvalue mismatch (isometry evidence is wrong or an edge is soft): {exc}",
              file=sys.stderr)
        return EXIT_NOT_ISOMETRIC
    except ModelError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _dump(rep.to_json(), args.json)
    if args.json != "-":
        print(rep.table())
    return EXIT_OK


def cmd_corpus(args) -> int:
    names = list(corpus.SCENARIOS) if args.all or not args.scenario else args.scenario
    unknown = [n for n in names if n not in corpus.SCENARIOS]
    if unknown:
        raise InputError(f"unknown scenario(s) {unknown}; choose from {sorted(corpus.SCENARIOS)}")
    reports = [corpus.run_scenario(n, args.seed) for n in names]
    if args.json:
        _dump([r.to_json() for r in reports], args.json)
    if args.json != "-":
        for r in reports:
            print(r.table())
        npass = sum(r.passed for r in reports)
        print(f"{npass}/{len(reports)} scenarios passed")
    return EXIT_OK if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="birkhoff", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("ortho", help="Birkhoff orthogonality in both directions")
    o.add_argument("space_file")
    o.add_argument("e", help="JSON vector or point id")
    o.add_argument("f", help="JSON vector or point id")
    o.add_argument("--tol", type=float)
    o.add_argument("--dual", action="store_true", help="add the norming-face cross-check")
    o.add_argument("--json", action="store_true", help="print a JSON report")
    o.set_defaults(func=cmd_ortho)

    g = sub.add_parser("graph", help="build the Birkhoff graph")
    g.add_argument("space_file")
    g.add_argument("--tol", type=float)
    g.add_argument("--dot", metavar="OUT")
    g.add_argument("--json", metavar="OUT", help="write JSON ('-' for stdout)")
    g.set_defaults(func=cmd_graph)

    r = sub.add_parser("rigidity", help="rigidity verdict for a weight or an operator")
    r.add_argument("space_file")
    which = r.add_mutually_exclusive_group(required=True)
    which.add_argument("--weight", metavar="NAME")
    which.add_argument("--operator", metavar="NAME")
    r.add_argument("--tol", type=float)
    r.add_argument("--json", metavar="OUT", help="write JSON ('-' for stdout)")
    r.set_defaults(func=cmd_rigidity)

    c = sub.add_parser("corpus", help="run the example scenarios")
    c.add_argument("--scenario", action="append", metavar="NAME")
    c.add_argument("--all", action="store_true")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", metavar="OUT", help="write JSON ('-' for stdout)")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
