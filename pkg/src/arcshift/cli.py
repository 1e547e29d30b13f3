"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 move not applicable, 3 inconclusive
search, 4 some corpus records failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Iterable, Sequence

from .gauss import GaussError, canonical_code, parse, render
from .invariants import TSV_HEADER, report
from .moves import MoveFamily, MoveKind, NotApplicable, apply, parse_move
from .planar import DegenerateRegion, PlanarDiagram, boundary_arcs, read_gauss, realize, regions
from .search import (
    DEFAULT_MAX_STATES,
    InvalidWitness,
    SearchConfig,
    SearchStatus,
    forbidden_to_ras,
    unknotting_search,
)

log = logging.getLogger("arcshift")

EXIT_OK, EXIT_PARSE, EXIT_NOT_APPLICABLE, EXIT_INCONCLUSIVE, EXIT_CORPUS = 0, 1, 2, 3, 4

FAMILIES = {f.value: f for f in MoveFamily if f is not MoveFamily.REIDEMEISTER}
CONFIG_KEYS = ("max_chords", "max_states", "families")


class ConfigError(ValueError):
    pass


def load_config(path: str | None) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment."""
    if path is None:
        return {}
    out: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: expected one of {', '.join(CONFIG_KEYS)} as key=value")
        if key == "families":
            fams = [v.strip() for v in value.split(",") if v.strip()]
            unknown = [v for v in fams if v not in FAMILIES]
            if unknown:
                raise ConfigError(f"{path}:{lineno}: unknown families {unknown}")
            out[key] = fams
        else:
            try:
                out[key] = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from None
    return out


def _parse_or_report(code: str):
    try:
        return parse(code)
    except GaussError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    try:
        d = parse(args.code)
    except GaussError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}")
        return EXIT_PARSE
    if d.n == 0:
        print("valid, 0 chords (unknot)")
    else:
        print(f"valid, {d.n} chord{'s' if d.n != 1 else ''}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    d = _parse_or_report(args.code)
    if d is None:
        return EXIT_PARSE
    rep = report(d)
    if args.tsv:
        print(TSV_HEADER)
        print(rep.tsv_row(args.name))
    else:
        _emit(rep.to_json())
    return EXIT_OK


def cmd_apply(args) -> int:
    d = _parse_or_report(args.code)
    if d is None:
        return EXIT_PARSE
    try:
        move = parse_move(args.move, d)
        out = apply(d, move)
    except NotApplicable as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(render(out))
    return EXIT_OK


def _search_config(family: MoveFamily, args, config: dict) -> SearchConfig:
    max_chords = args.max_chords if args.max_chords is not None else config.get("max_chords")
    max_states = args.max_states if args.max_states is not None else config.get("max_states", DEFAULT_MAX_STATES)
    return SearchConfig(family, max_chords, max_states)


def cmd_unknot(args, config: dict) -> int:
    d = _parse_or_report(args.code)
    if d is None:
        return EXIT_PARSE
    try:
        cfg = _search_config(FAMILIES[args.set], args, config)
        res = unknotting_search(d, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit(res.to_json())
    return EXIT_INCONCLUSIVE if res.status is SearchStatus.INCONCLUSIVE else EXIT_OK


def _read_corpus(path: Path) -> Iterable[tuple[int, str, str]]:
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, sep, code = line.partition("\t")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected name<TAB>code")
        yield lineno, name.strip(), code.strip()


def _cached_keys(out: Path) -> set[tuple[str, str]]:
    keys = set()
    if not out.exists():
        return keys
    for line in out.read_text().splitlines():
        try:
            rec = json.loads(line)
            keys.add((rec["cache_key"], json.dumps(rec["config"], sort_keys=True)))
        except (ValueError, KeyError, TypeError):
            log.warning("ignoring unreadable cache line in %s", out)
    return keys


def corpus_record(name: str, code: str, config: dict) -> dict:
    """Invariants and family bounds for one corpus entry."""
    d = parse(code)
    bounds = {}
    results = {}
    for fam in config["families"]:
        cfg = SearchConfig(FAMILIES[fam], config["max_chords"], config["max_states"])
        results[fam] = unknotting_search(d, cfg)
        bounds[fam] = results[fam].to_json()
    checks = {}
    f = results.get("forbidden")
    if f is not None and f.upper_bound is not None:
        converted = forbidden_to_ras(d, f.witness)
        r_upper = sum(1 for m in converted if m.kind is MoveKind.RAS_ADJACENT)
        checks["ras_from_forbidden"] = r_upper
        r = results.get("ras")
        if r is not None and (r.upper_bound is None or r_upper < r.upper_bound):
            bounds["ras"] = dict(
                r.to_json(),
                upper_bound=r_upper,
                status="exact" if r_upper == r.lower_bound else "upper",
                witness=[m.spec for m in converted],
            )
        r_best = bounds.get("ras", {}).get("upper_bound", r_upper)
        checks["ras_le_forbidden"] = r_best is not None and r_best <= f.upper_bound
    return {
        "name": name,
        "code": code,
        "cache_key": canonical_code(d),
        "config": config,
        "report": report(d).to_json(),
        "bounds": bounds,
        "checks": checks,
    }


def cmd_corpus(args, config: dict) -> int:
    path = Path(args.file)
    out = Path(args.out)
    run_cfg = {
        "families": list(config.get("families", list(FAMILIES))),
        "max_chords": args.max_chords if args.max_chords is not None else config.get("max_chords"),
        "max_states": args.max_states if args.max_states is not None else config.get("max_states", DEFAULT_MAX_STATES),
    }
    cfg_key = json.dumps(run_cfg, sort_keys=True)
    done = _cached_keys(out)
    errors = computed = skipped = 0
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("a") as fh:
        try:
            entries = list(_read_corpus(path))
        except (OSError, ValueError) as exc:
            log.error("%s", exc)
            return EXIT_CORPUS
        for lineno, name, code in entries:
            try:
                key = canonical_code(parse(code))
            except GaussError as exc:
                log.error("line %d (%s): %s", lineno, name, exc)
                errors += 1
                continue
            if (key, cfg_key) in done:
                skipped += 1
                continue
            try:
                rec = corpus_record(name, code, run_cfg)
            except (ValueError, InvalidWitness) as exc:
                log.error("line %d (%s): %s", lineno, name, exc)
                errors += 1
                continue
            if rec["checks"].get("ras_le_forbidden") is False:
                log.error("line %d (%s): RAS bound exceeds forbidden bound", lineno, name)
                errors += 1
            fh.write(json.dumps(rec) + "\n")
            fh.flush()
            done.add((key, cfg_key))
            computed += 1
    print(f"computed {computed}, cached {skipped}, errors {errors}")
    return EXIT_CORPUS if errors else EXIT_OK


def cmd_realize(args) -> int:
    d = _parse_or_report(args.code)
    if d is None:
        return EXIT_PARSE
    p = realize(d)
    out = p.to_json()
    if args.regions:
        listing = []
        for k, r in enumerate(regions(p)):
            item = {"index": k, "darts": list(r.boundary)}
            try:
                item["arcs"] = len(boundary_arcs(p, r))
                item["degenerate"] = False
            except DegenerateRegion:
                item["arcs"] = len(r.boundary)
                item["degenerate"] = True
            listing.append(item)
        out["regions"] = listing
    _emit(out)
    return EXIT_OK


def cmd_read_gauss(args) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    try:
        p = PlanarDiagram.from_json(json.loads(text))
        p.validate()
        d = read_gauss(p)
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(canonical_code(d))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .oracle import proposition_suite

    results = proposition_suite(args.max_chords)
    for r in results:
        print(r.line())
        for msg in r.failures:
            print(f"    {msg}")
    ok = all(r.passed for r in results)
    print("all propositions pass" if ok else "some propositions FAILED")
    return EXIT_OK if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arcshift", description="Gauss-diagram tools for virtual knots.")
    ap.add_argument("--config", help="key=value file with max_chords, max_states, families")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a Gauss code")
    p.add_argument("code")

    p = sub.add_parser("invariants", help="writhe, odd writhe, parity and the arc shift bound")
    p.add_argument("code")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--tsv", action="store_true")
    p.add_argument("--name", default="input", help="row name for --tsv")

    p = sub.add_parser("apply", help="apply one move")
    p.add_argument("code")
    p.add_argument("--move", required=True, help="move spec, e.g. as:2, f:0, r1d:3")

    for name, helptext in (("unknot", "bounded unknotting search"), ("corpus", "batch run over a TSV corpus")):
        p = sub.add_parser(name, help=helptext)
        if name == "unknot":
            p.add_argument("code")
            p.add_argument("--set", choices=sorted(FAMILIES), default="arcshift")
        else:
            p.add_argument("file")
            p.add_argument("--out", required=True)
        p.add_argument("--max-chords", type=int)
        p.add_argument("--max-states", type=int)

    p = sub.add_parser("realize", help="planar diagram as JSON")
    p.add_argument("code")
    p.add_argument("--regions", action="store_true")

    p = sub.add_parser("read-gauss", help="read a Gauss code back from planar JSON")
    p.add_argument("file", nargs="?", default="-")

    p = sub.add_parser("selftest", help="exhaustive property checks")
    p.add_argument("--max-chords", type=int, default=3)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = load_config(args.config)
    except (OSError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    cmd = args.command
    if cmd == "validate":
        return cmd_validate(args)
    if cmd == "invariants":
        return cmd_invariants(args)
    if cmd == "apply":
        return cmd_apply(args)
    if cmd == "unknot":
        return cmd_unknot(args, config)
    if cmd == "corpus":
        return cmd_corpus(args, config)
    if cmd == "realize":
        return cmd_realize(args)
    if cmd == "read-gauss":
        return cmd_read_gauss(args)
    return cmd_selftest(args)


if __name__ == "__main__":
    sys.exit(main())
