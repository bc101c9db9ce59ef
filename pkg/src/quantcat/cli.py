"""Command-line entry point: load definitions, run the verification suites,
compute point-set distances, and emit machine-readable reports.

Exit status: 0 when every check passes, 1 when at least one check fails,
2 on input or usage errors. JSON reports are canonical — fixed field order,
no volatile fields unless requested — so identical invocations produce
byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .bridge import coreflective_image_check, counit_iota, delta, gamma
from .corpus import all_categories, metric_fixtures
from .errors import (CarrierTooLarge, EnumerationTooLarge,
                     EnumerationUnsupported, InvalidInput, QuantcatError)
from .hausdorff import (directed_distance, line_space, space_from_matrix,
                        symmetric_distance)
from .laxext import (enriched_monad, is_flat, minimal_extension, monad_names,
                     verify_enriched_lax_extension, verify_enriched_monad)
from .presheaf import copresheaf_cat, presheaf_cat
from .qcat import category_from_json, category_report
from .qrel import (check_discrete_lax_extension, check_discrete_monad,
                   discrete_ext_by_name, discrete_monad_by_name,
                   relation_from_json, typed_set, typed_set_from_json,
                   typed_set_to_json)
from .quantaloid import LAWVERE, builtin_names, load_quantaloid, only_object, \
    verify_quantaloid
from .report import Report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, validated up front."""
    command: str
    quantaloid: str = "builtin:2"
    inputs: tuple = ()
    max_carrier: int = 2
    max_enum: int | None = None
    max_fiber: int | None = None
    samples: int = 1000
    out_path: str | None = None
    fmt: str = "human"
    timings: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        for label, cap in (("max-carrier", self.max_carrier),
                           ("max-enum", self.max_enum),
                           ("max-fiber", self.max_fiber),
                           ("samples", self.samples)):
            if cap is not None and cap <= 0:
                raise InvalidInput(f"{label} must be positive, got {cap}")
        if self.fmt not in ("human", "json"):
            raise InvalidInput(f"unknown output format {self.fmt!r}")


def emit_report(report: Report, fmt: str, timings: dict | None = None) -> bytes:
    """Serialize a report: canonical JSON or a fixed-width human table."""
    if fmt == "json":
        doc = report.to_dict()
        if timings:
            doc["timings"] = timings
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    rows = [("check", "verdict", "details")]
    for c in report.checks:
        verdict = "ok" if c.passed else "FAIL"
        if c.sampled:
            verdict += " (sampled)"
        details = c.notes or ""
        if c.witness is not None and not c.passed:
            extra = json.dumps(c.witness, sort_keys=True)
            details = f"{details} witness: {extra}".strip()
        rows.append((c.name, verdict, details))
    widths = [max(len(r[i]) for r in rows) for i in range(2)]
    lines = [f"subject: {report.subject}"]
    lines.append(f"{rows[0][0]:<{widths[0]}} | {rows[0][1]:<{widths[1]}} | "
                 f"{rows[0][2]}")
    lines.append(f"{'-' * widths[0]}-+-{'-' * widths[1]}-+--------")
    for name, verdict, details in rows[1:]:
        lines.append(f"{name:<{widths[0]}} | {verdict:<{widths[1]}} | {details}")
    if timings:
        for key, value in timings.items():
            lines.append(f"timing: {key} = {value}")
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _emit_doc(doc: dict, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    lines = [f"{key}: {value}" for key, value in doc.items()]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InvalidInput(f"cannot read {path!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise InvalidInput(
            f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None


def _corpus(Q, max_carrier: int):
    if not getattr(Q, "enumerable", False):
        if Q is LAWVERE:
            return metric_fixtures()
        raise InvalidInput(
            f"no finite category corpus over {Q.name}; supply an enumerable "
            "quantaloid")
    return all_categories(Q, max_carrier)


def _suite_sets(Q):
    only_object(Q)
    return (typed_set(Q, ("a",)), typed_set(Q, ("a", "b")),
            typed_set(Q, ("a", "b", "c")))


# ---------------------------------------------------------------- subcommands


def _cmd_check_quantaloid(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    return verify_quantaloid(Q, samples=cfg.samples)


def _cmd_check_category(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    doc = _read_json(cfg.inputs[0])
    if not isinstance(doc, dict):
        raise InvalidInput(f"{cfg.inputs[0]}: category JSON must be an object")
    X = typed_set_from_json(Q, doc)
    rows = doc.get("hom")
    if not isinstance(rows, list):
        raise InvalidInput(f"{cfg.inputs[0]}: category JSON needs a 'hom' "
                           "table")
    hom = relation_from_json(Q, {"source": typed_set_to_json(X),
                                 "target": typed_set_to_json(X),
                                 "table": rows})
    return category_report(X, hom)


def _cmd_presheaf(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    C = category_from_json(Q, _read_json(cfg.inputs[0]))
    co = cfg.options.get("co", False)
    built = (copresheaf_cat if co else presheaf_cat)(C)
    kind = "copresheaves" if co else "presheaves"
    rep = Report(f"{kind} over a {len(C)}-element category")
    witness = None
    if len(built.cat) <= 64:
        witness = {"elements": list(built.cat.carrier.elements)}
    rep.add("carrier enumerated", True,
            notes=f"{len(built.cat)} {kind}", witness=witness)
    return rep


def _resolve_enriched(name: str):
    if name not in monad_names():
        raise InvalidInput(f"unknown enriched monad {name!r} "
                           f"(have: {', '.join(monad_names())})")
    return enriched_monad(name)


def _cmd_verify_monad(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    T = _resolve_enriched(cfg.options["monad"])
    return verify_enriched_monad(T, _corpus(Q, cfg.max_carrier))


def _cmd_verify_laxext(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    T = _resolve_enriched(cfg.options["monad"])
    return verify_enriched_lax_extension(minimal_extension(T),
                                         _corpus(Q, cfg.max_carrier))


def _discrete_suite(Q, M, E, samples: int) -> Report:
    sets = _suite_sets(Q)
    rep = Report(f"set-level suite for {M.name}"
                 + (f" with {E.name}" if E is not None else ""))
    for k, X in enumerate(sets):
        rep.extend(check_discrete_monad(M, X), prefix=f"monad [{k}] ")
    if E is not None:
        pairs = ((sets[0], sets[-1]), (sets[-1], sets[0]))
        for k, (X, Y) in enumerate(pairs):
            rep.extend(check_discrete_lax_extension(E, X, Y, samples=samples),
                       prefix=f"extension [{k}] ")
    return rep


def _cmd_check_discrete(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    M = discrete_monad_by_name(Q, cfg.options["monad"])
    ext_name = cfg.options.get("ext")
    E = (discrete_ext_by_name(Q, cfg.options["monad"], ext_name)
         if ext_name else None)
    return _discrete_suite(Q, M, E, samples=min(cfg.samples, 12))


def _load_space(path: str):
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise InvalidInput(f"{path}: space JSON must be an object")
    if "points" in doc:
        coords = doc["points"]
        if (not isinstance(coords, list)) or not coords:
            raise InvalidInput(f"{path}: 'points' must be a non-empty list")
        return line_space(coords, [str(c) for c in coords])
    if "elements" in doc and "distances" in doc:
        return space_from_matrix(doc["elements"], doc["distances"])
    raise InvalidInput(
        f"{path}: a space file needs either 'points' or "
        "'elements' + 'distances'")


def _cmd_hausdorff(cfg: RunConfig) -> dict:
    X = _load_space(cfg.options["space"])
    src = [s.strip() for s in cfg.options["src"].split(",") if s.strip()]
    tgt = [s.strip() for s in cfg.options["tgt"].split(",") if s.strip()]
    Q = X.carrier.quantaloid
    h = Q.hom(X.carrier.types[0], X.carrier.types[0])
    forward = directed_distance(X, src, tgt)
    backward = directed_distance(X, tgt, src)
    both = symmetric_distance(X, src, tgt)
    return {
        "space": cfg.options["space"],
        "from": src,
        "to": tgt,
        "directed": h.format(forward),
        "directed back": h.format(backward),
        "symmetric": h.format(both),
    }


def _cmd_discretize(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    name = cfg.options["monad"]
    restricted = gamma(name, Q)
    rep = Report(f"restriction of {name} to sets over {Q.name}")
    rep.extend(_discrete_suite(Q, restricted.monad, restricted.extension,
                               samples=min(cfg.samples, 12)))
    return rep


def _cmd_lift(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    monad_name = cfg.options["discrete"]
    ext_name = cfg.options["ext"]
    E = discrete_ext_by_name(Q, monad_name, ext_name)
    rep = Report(f"lift of ({monad_name}, {E.name}) over {Q.name}")
    rep.extend(_discrete_suite(Q, E.monad, E, samples=min(cfg.samples, 12)),
               prefix="precondition: ")
    if not rep.passed:
        return rep
    lifted = delta(E)
    cats = _corpus(Q, cfg.max_carrier)
    for k, X in enumerate(cats):
        rep.add(f"lifted extension is flat [{k}]",
                is_flat(lifted.extension, X))
    rep.extend(verify_enriched_lax_extension(lifted.extension, cats),
               prefix="lifted: ")
    return rep


def _cmd_coreflection(cfg: RunConfig) -> Report:
    Q = load_quantaloid(cfg.quantaloid)
    name = cfg.options["monad"]
    _resolve_enriched(name)
    cats = _corpus(Q, cfg.max_carrier)
    comparison = counit_iota(name, cats, quantaloid=Q)
    rep = Report(f"coreflection of {name} over {Q.name}")
    rep.extend(comparison.report, prefix="comparison: ")
    rep.extend(coreflective_image_check(name, cats), prefix="image: ")
    return rep


_COMMANDS = {
    "check-quantaloid": _cmd_check_quantaloid,
    "check-category": _cmd_check_category,
    "presheaf": _cmd_presheaf,
    "verify-monad": _cmd_verify_monad,
    "verify-laxext": _cmd_verify_laxext,
    "check-discrete": _cmd_check_discrete,
    "hausdorff": _cmd_hausdorff,
    "discretize": _cmd_discretize,
    "lift": _cmd_lift,
    "coreflection": _cmd_coreflection,
}


# ------------------------------------------------------------------- plumbing


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="quantcat",
        description="verification suites for quantaloid-enriched categories")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, quantaloid=True):
        if quantaloid:
            p.add_argument("--quantaloid", default="builtin:2",
                           help="builtin:<name> or a JSON file "
                                f"(builtins: {', '.join(builtin_names())})")
        p.add_argument("--max-carrier", type=int, default=2,
                       help="largest category carrier in generated corpora")
        p.add_argument("--max-enum", type=int, default=None,
                       help="override the enumeration budget")
        p.add_argument("--max-fiber", type=int, default=None,
                       help="override the subset-fiber cap")
        p.add_argument("--samples", type=int, default=1000,
                       help="sample count for non-enumerable checks")
        p.add_argument("--report", dest="out_path", default=None,
                       help="also write the JSON report to this path")
        p.add_argument("--format", dest="fmt", choices=("human", "json"),
                       default="human", help="stdout format")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock timings (volatile)")

    common(sub.add_parser("check-quantaloid",
                          help="composition, units, joins, residuals"))

    p = sub.add_parser("check-category", help="reflexivity and transitivity")
    p.add_argument("category", help="category JSON file")
    common(p)

    p = sub.add_parser("presheaf", help="enumerate (co)presheaves")
    p.add_argument("category", help="category JSON file")
    p.add_argument("--co", action="store_true", help="copresheaves instead")
    common(p)

    for name in ("verify-monad", "verify-laxext"):
        p = sub.add_parser(name, help=f"{name.split('-')[1]} laws on a corpus")
        p.add_argument("--monad", required=True,
                       help=f"one of: {', '.join(monad_names())}")
        common(p)

    p = sub.add_parser("check-discrete", help="set-level monad and extension")
    p.add_argument("--monad", required=True,
                   help="identity | powerset | upset")
    p.add_argument("--ext", default=None,
                   help="extension name for the chosen monad")
    common(p)

    p = sub.add_parser("hausdorff", help="directed point-set distances")
    p.add_argument("--space", required=True, help="space JSON file")
    p.add_argument("--from", dest="src", required=True,
                   help="comma-separated point labels")
    p.add_argument("--to", dest="tgt", required=True,
                   help="comma-separated point labels")
    common(p, quantaloid=False)

    p = sub.add_parser("discretize", help="restrict an enriched monad to sets")
    p.add_argument("--monad", required=True,
                   help=f"one of: {', '.join(monad_names())}")
    common(p)

    p = sub.add_parser("lift", help="lift a set-level monad to categories")
    p.add_argument("--discrete", required=True,
                   help="identity | powerset | upset")
    p.add_argument("--ext", required=True,
                   help="extension name for the chosen monad")
    common(p)

    p = sub.add_parser("coreflection",
                       help="comparison functors and image criterion")
    p.add_argument("--monad", required=True,
                   help=f"one of: {', '.join(monad_names())}")
    common(p)

    return top


def _config_from(ns: argparse.Namespace) -> RunConfig:
    options = {}
    for key in ("monad", "ext", "discrete", "space", "src", "tgt", "co"):
        if hasattr(ns, key) and getattr(ns, key) not in (None, False):
            options[key] = getattr(ns, key)
    inputs = tuple(getattr(ns, key) for key in ("category",)
                   if hasattr(ns, key))
    return RunConfig(command=ns.command,
                     quantaloid=getattr(ns, "quantaloid", "builtin:2"),
                     inputs=inputs,
                     max_carrier=ns.max_carrier,
                     max_enum=ns.max_enum,
                     max_fiber=ns.max_fiber,
                     samples=ns.samples,
                     out_path=ns.out_path,
                     fmt=ns.fmt,
                     timings=ns.timings,
                     options=options)


def run(cfg: RunConfig, out=None) -> int:
    """Execute one configured command and write its report."""
    out = out if out is not None else sys.stdout.buffer
    if cfg.max_enum is not None:
        os.environ["QUANTCAT_MAX_ENUM"] = str(cfg.max_enum)
    if cfg.max_fiber is not None:
        from . import config, hausdorff
        config.MAX_HAUSDORFF_FIBER = cfg.max_fiber
        hausdorff.MAX_HAUSDORFF_FIBER = cfg.max_fiber
    started = time.monotonic()
    result = _COMMANDS[cfg.command](cfg)
    elapsed = time.monotonic() - started
    timings = {"total_seconds": round(elapsed, 3)} if cfg.timings else None
    if isinstance(result, Report):
        payload = emit_report(result, cfg.fmt, timings)
        json_payload = emit_report(result, "json", timings)
        status = EXIT_PASS if result.passed else EXIT_FAIL
    else:
        payload = _emit_doc(result, cfg.fmt)
        json_payload = _emit_doc(result, "json")
        status = EXIT_PASS
    out.write(payload)
    try:
        out.flush()
    except AttributeError:
        pass
    if cfg.out_path:
        with open(cfg.out_path, "wb") as fh:
            fh.write(json_payload)
    return status


def main(argv=None) -> int:
    parser = _parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config_from(ns)
        return run(cfg)
    except (InvalidInput, EnumerationUnsupported, CarrierTooLarge,
            EnumerationTooLarge) as e:
        print(f"quantcat: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except QuantcatError as e:
        print(f"quantcat: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
