"""Command-line interface.

Parses instance files, runs the requested pipeline stages in a fixed order
with conversions inserted automatically, and emits a fixed-width human
summary plus a structured JSON report.  Exit codes: 0 all verdicts
positive, 1 some mathematical verdict negative, 2 input error, 3 internal
or convergence error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .corpus import build, parse_recipe, random_system
from .errors import (
    ConvergenceFailure,
    DegenerateSystem,
    HamlagError,
    MalformedRecipe,
    NonGenericPresentation,
    NotFullRank,
    ParseError,
    SchemaError,
    Unbounded,
)
from .instances import (
    InstanceFile,
    emit_instance,
    parse_instance,
    polytope_document,
    quadrics_document,
    recipe_document,
)
from .lattices import (
    delzant_check,
    embedding_criterion_quadrics,
    embedding_verdict_both,
    isotropy_group,
)
from .polytopes import check_generic, to_polytope, to_quadrics
from .quadrics import validate
from .sampling import (
    ACCEPT_TOLERANCE,
    LAGRANGIAN_TOLERANCE,
    RANK_THRESHOLD,
    sample_points,
    verify_lagrangian,
)
from .topology import classify

PIPELINE_STAGES = (
    "validate",
    "generic",
    "delzant",
    "embed",
    "classify",
    "isotropy",
    "sample",
    "lagrangian",
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def jsonable(obj: Any) -> Any:
    """Recursively convert report objects into JSON-serialisable values."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "infinite"
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return jsonable(obj.item())
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (frozenset, set)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclasses.dataclass
class PipelineOptions:
    count: int = 100
    seed: int = 0
    index_set: tuple[int, ...] | None = None   # zero-based internally
    accept_tolerance: float = ACCEPT_TOLERANCE
    lagrangian_tolerance: float = LAGRANGIAN_TOLERANCE
    rank_threshold: float = RANK_THRESHOLD


class _Materialised:
    """Lazily derived quadric and polytope views of one instance."""

    def __init__(self, instance: InstanceFile):
        self.instance = instance
        self._system = instance.quadrics
        self._presentation = instance.polytope
        if instance.recipe is not None:
            self._presentation = build(instance.recipe)
        self.origin = instance.format

    def system(self):
        if self._system is None:
            self._system = to_quadrics(self._presentation)
        return self._system

    def presentation(self):
        if self._presentation is None:
            self._presentation = to_polytope(self._system)
        return self._presentation


def _stage_runners(mat: _Materialised, options: PipelineOptions):
    def run_validate():
        report = validate(mat.system())
        return report.nonempty_nondegenerate, report, "nondegenerate" if report.nonempty_nondegenerate else "degenerate or empty"

    def run_generic():
        report = check_generic(mat.presentation())
        return report.generic, report, "generic" if report.generic else "not generic"

    def run_delzant():
        verdict = delzant_check(mat.presentation())
        return verdict.embeds, verdict, "Delzant" if verdict.embeds else "not Delzant"

    def run_embed():
        if mat.origin == "quadrics":
            verdict = embedding_criterion_quadrics(mat.system())
        else:
            verdict = embedding_verdict_both(mat.presentation())
        return verdict.embeds, verdict, "embeds" if verdict.embeds else "immersion only"

    def run_classify():
        report = classify(mat.system())
        summary = f"R = {report.r_topology.label}; N = {report.n_topology.label}"
        return True, report, summary

    def run_isotropy():
        assert options.index_set is not None
        group = isotropy_group(mat.system(), options.index_set)
        return True, group, f"isotropy {group.describe()} of order {group.order}"

    def run_sample():
        points = sample_points(
            mat.system(), options.count, options.seed, options.accept_tolerance
        )
        worst = max(p.residual for p in points)
        detail = {
            "accepted": len(points),
            "seed": options.seed,
            "max_quadric_residual": worst,
        }
        return worst <= options.accept_tolerance, detail, f"{len(points)} samples, max residual {worst:.2e}"

    def run_lagrangian():
        report = verify_lagrangian(
            mat.system(),
            options.count,
            options.seed,
            options.accept_tolerance,
            options.rank_threshold,
        )
        ok = (
            report.max_symplectic_pullback <= options.lagrangian_tolerance
            and report.min_frame_singular_value >= 1e-6
        )
        return ok, report, (
            f"symplectic pullback {report.max_symplectic_pullback:.2e}, "
            f"min singular value {report.min_frame_singular_value:.2e}"
        )

    return {
        "validate": run_validate,
        "generic": run_generic,
        "delzant": run_delzant,
        "embed": run_embed,
        "classify": run_classify,
        "isotropy": run_isotropy,
        "sample": run_sample,
        "lagrangian": run_lagrangian,
    }


def run_pipeline(instance: InstanceFile, stages: list[str],
                 options: PipelineOptions) -> tuple[dict, int]:
    """Execute the requested stages and assemble the report document."""
    mat = _Materialised(instance)
    runners = _stage_runners(mat, options)
    requested = set(stages)
    results = []
    exit_code = EXIT_OK
    for name in PIPELINE_STAGES:
        if name not in requested or (name == "isotropy" and options.index_set is None):
            reason = "not requested" if name not in requested else "no index set supplied"
            results.append({"name": name, "status": "skipped", "reason": reason})
            continue
        runner = runners[name]
        try:
            positive, payload, summary = runner()
        except (DegenerateSystem, Unbounded, NonGenericPresentation, NotFullRank) as exc:
            results.append(
                {"name": name, "status": "negative", "reason": f"{type(exc).__name__}: {exc}"}
            )
            exit_code = max(exit_code, EXIT_NEGATIVE)
            continue
        except ConvergenceFailure as exc:
            results.append(
                {"name": name, "status": "error", "reason": f"{type(exc).__name__}: {exc}"}
            )
            exit_code = max(exit_code, EXIT_INTERNAL)
            continue
        status = "ok" if positive else "negative"
        if not positive:
            exit_code = max(exit_code, EXIT_NEGATIVE)
        results.append(
            {
                "name": name,
                "status": status,
                "summary": summary,
                "result": jsonable(payload),
            }
        )
    ran = [r for r in results if r["status"] in ("ok", "negative")]
    negatives = [r["name"] for r in ran if r["status"] == "negative"]
    verdict = "all verdicts positive" if not negatives else "negative: " + ", ".join(negatives)
    if any(r["status"] == "error" for r in results):
        verdict = "error during " + ", ".join(r["name"] for r in results if r["status"] == "error")
    document = {
        "tool": "hamlag",
        "version": __version__,
        "instance": _echo_instance(instance),
        "stages": results,
        "verdict": verdict,
    }
    return document, exit_code


def _echo_instance(instance: InstanceFile) -> dict:
    if instance.format == "quadrics":
        return quadrics_document(instance.quadrics, instance.name, instance.description)
    if instance.format == "polytope":
        return polytope_document(instance.polytope, instance.name, instance.description)
    return recipe_document(instance.recipe, name=instance.name, seed=instance.seed)


def print_human_summary(document: dict, stream=None):
    stream = stream or sys.stdout
    name = document["instance"].get("name") or document["instance"]["format"]
    print(f"instance: {name}", file=stream)
    for stage in document["stages"]:
        if stage["status"] == "skipped":
            continue
        line = f"  {stage['name']:<12} {stage['status']:<9}"
        extra = stage.get("summary") or stage.get("reason") or ""
        print(f"{line} {extra}", file=stream)
    print(f"verdict: {document['verdict']}", file=stream)


def _write_document(document: dict, out: str | None):
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_tolerances(pairs: list[str], options: PipelineOptions):
    for pair in pairs:
        if "=" not in pair:
            raise SchemaError(f"tolerance override must look like name=value, got {pair!r}")
        key, _, value = pair.partition("=")
        try:
            parsed = float(value)
        except ValueError:
            raise SchemaError(f"bad tolerance value {value!r}") from None
        if key == "accept":
            options.accept_tolerance = parsed
        elif key == "lagrangian":
            options.lagrangian_tolerance = parsed
        elif key == "rank":
            options.rank_threshold = parsed
        else:
            raise SchemaError(f"unknown tolerance {key!r} (accept, lagrangian, rank)")


def _command_stages(command: str) -> list[str]:
    return {
        "check": ["validate", "generic"],
        "delzant": ["delzant"],
        "embed": ["embed"],
        "classify": ["validate", "classify"],
        "isotropy": ["isotropy"],
        "sample": ["sample"],
        "verify-lagrangian": ["lagrangian"],
    }[command]


def _resolve_stages(spec: str) -> list[str]:
    if spec == "all":
        return [s for s in PIPELINE_STAGES if s != "isotropy"]
    stages = [s.strip() for s in spec.split(",") if s.strip()]
    for s in stages:
        if s not in PIPELINE_STAGES:
            raise SchemaError(f"unknown stage {s!r}; stages are {', '.join(PIPELINE_STAGES)}")
    return stages


def _run_on_instance(instance: InstanceFile, stages: list[str],
                     options: PipelineOptions, out: str | None,
                     quiet: bool = False) -> int:
    document, code = run_pipeline(instance, stages, options)
    if not quiet:
        print_human_summary(document)
    if out:
        _write_document(document, out)
    return code


def _add_common(parser: argparse.ArgumentParser, with_numeric: bool = False):
    parser.add_argument("instance", nargs="?", help="instance file (JSON)")
    parser.add_argument("--batch", help="process every .json file in a directory")
    parser.add_argument("--out", help="write the structured report to this path")
    parser.add_argument(
        "--tolerance",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override a numeric tolerance: accept, lagrangian or rank",
    )
    if with_numeric:
        parser.add_argument("--count", type=int, default=100)
        parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamlag",
        description=(
            "Exact decision procedures for Lagrangian submanifolds built from "
            "intersections of real quadrics"
        ),
    )
    parser.add_argument("--version", action="version", version=f"hamlag {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text, numeric in (
        ("check", "validate a quadric system / genericity of a presentation", False),
        ("delzant", "unimodular vertex-basis test of a presentation", False),
        ("embed", "embedding criterion (both sides for polytope input)", False),
        ("classify", "topology classification of a compact system", False),
        ("sample", "sample points on the real locus", True),
        ("verify-lagrangian", "numeric immersion and Lagrangian residuals", True),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p, with_numeric=numeric)

    p = sub.add_parser("isotropy", help="isotropy group of a zero set")
    _add_common(p)
    p.add_argument(
        "--index-set",
        required=True,
        help="comma-separated 1-based coordinate indices, e.g. 1,2",
    )

    p = sub.add_parser("convert", help="convert between quadrics and polytope forms")
    p.add_argument("instance")
    p.add_argument("--out", help="write the converted instance to this path")

    p = sub.add_parser("generate", help="build an instance from a recipe or random draw")
    p.add_argument("--recipe", help="recipe expression, e.g. vertex_cut(simplex(2),0,1/2)")
    p.add_argument("--random", metavar="M,N,BOUND", help="random quadric system shape")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the generated instance to this path")

    p = sub.add_parser("pipeline", help="run a configurable stage pipeline")
    _add_common(p, with_numeric=True)
    p.add_argument("--stages", default="all", help="comma-separated stages or 'all'")
    p.add_argument("--index-set", help="1-based indices enabling the isotropy stage")

    return parser


def _iter_batch(directory: str):
    files = sorted(Path(directory).glob("*.json"))
    if not files:
        raise ParseError(f"no .json instances in {directory}")
    return files


def _dispatch(args: argparse.Namespace) -> int:
    options = PipelineOptions()
    if getattr(args, "count", None) is not None:
        options.count = args.count
    if getattr(args, "seed", None) is not None:
        options.seed = args.seed
    _parse_tolerances(getattr(args, "tolerance", []), options)
    if getattr(args, "index_set", None):
        indices = []
        for token in args.index_set.split(","):
            token = token.strip()
            if not token.isdigit() or int(token) < 1:
                raise SchemaError(f"index set entries are 1-based positive integers, got {token!r}")
            indices.append(int(token) - 1)
        options.index_set = tuple(indices)

    if args.command == "generate":
        if bool(args.recipe) == bool(args.random):
            raise SchemaError("generate needs exactly one of --recipe or --random")
        if args.recipe:
            recipe = parse_recipe(args.recipe)
            presentation = build(recipe)
            doc = polytope_document(presentation, name=args.recipe)
        else:
            try:
                m, n, bound = (int(x) for x in args.random.split(","))
            except ValueError:
                raise SchemaError("--random expects M,N,BOUND integers") from None
            result = random_system(m, n, args.seed, bound)
            doc = quadrics_document(
                result.system, name=f"random(m={m},n={n},seed={args.seed})"
            )
        text = emit_instance(doc)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "convert":
        instance = parse_instance(args.instance)
        mat = _Materialised(instance)
        if instance.format == "quadrics":
            doc = polytope_document(mat.presentation(), name=instance.name)
        else:
            doc = quadrics_document(mat.system(), name=instance.name)
        text = emit_instance(doc)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "pipeline":
        stages = _resolve_stages(args.stages)
        if options.index_set is not None and "isotropy" not in stages:
            stages.append("isotropy")
    else:
        stages = _command_stages(args.command)

    if getattr(args, "batch", None):
        worst = EXIT_OK
        for path in _iter_batch(args.batch):
            instance = parse_instance(path)
            document, code = run_pipeline(instance, stages, options)
            print(f"{path.name:<40} exit {code}: {document['verdict']}")
            worst = max(worst, code)
        return worst

    if not args.instance:
        raise SchemaError("an instance file is required unless --batch is used")
    instance = parse_instance(args.instance)
    return _run_on_instance(instance, stages, options, getattr(args, "out", None))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ParseError, SchemaError, MalformedRecipe) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceFailure as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DegenerateSystem, Unbounded, NonGenericPresentation) as exc:
        # conversion failures before any stage ran still carry a verdict
        print(f"negative verdict: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except HamlagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
