"""Command-line surface.

Commands
  group list / group info   catalog entries, verified on load
  chartab                   exact character table of a catalog group
  tsf / cross               bracket rows for arbitrary character selectors
  code build / code verify  recipe assembly and kissing certification
  reproduce                 documented-example reports
  cache clear               drop the on-disk row cache

Every command emits deterministic output for identical inputs (the
reproduce reports contain one timestamp line); ``--json`` switches any
command to structured output.  Exit codes: 0 success, 2 expectation or
verification mismatch, 3 input error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback

import numpy as np

from ..codes import LineSystemUnion, coherence, embed_vectors_from_gram, verify_kissing
from ..errors import (
    ExpectationMismatch,
    InputError,
    InvariantViolation,
    SymframesError,
)
from ..permcore import Permutation
from .cache import DiskCache
from .catalog import Context, load_catalog
from .recipes import BuiltCode, build_recipe, load_recipe
from .render import bracket_row, decimal_str, pretty, value_str
from .reproduce import example_ids, reproduce

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 3; this artifact reserves 2 for mismatches."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _cycles(raw: bytes) -> str:
    return Permutation(len(raw), raw).cycle_string()


def _val_json(v) -> dict:
    return {"exact": pretty(v), "decimal": decimal_str(v), "data": v.to_dict()}


def _cells_json(cells) -> list[dict]:
    return [
        {"representative": [b + 1 for b in c.rep], "size": c.size,
         "value": _val_json(c.value)}
        for c in cells
    ]


# --------------------------------------------------------------------------
# group
# --------------------------------------------------------------------------


def _cmd_group(args, cache):
    if args.action == "list":
        catalog = load_catalog(verify=False)
        lines = ["catalog groups:"]
        payload = []
        for name in sorted(catalog):
            e = catalog[name]
            lines.append(f"  {name}: degree {e.degree}, order {e.order}, "
                         f"{len(e.subgroups)} subgroups, {len(e.rows)} rows, "
                         f"{len(e.crosses)} cross rows")
            payload.append({"name": name, "degree": e.degree, "order": e.order,
                            "subgroups": sorted(e.subgroups),
                            "rows": sorted(e.rows),
                            "crosses": sorted(e.crosses)})
        return EXIT_OK, {"groups": payload}, lines

    ctx = Context.open(args.name, cache=cache)
    e = ctx.entry
    lines = [
        f"group {e.name}: degree {e.degree}, order {e.order} (verified)",
    ]
    if e.provenance:
        lines.append(f"  about: {e.provenance}")
    lines.append("  generators:")
    lines.extend(f"    {_cycles(Permutation.from_images(g).raw)}"
                 for g in e.generators)
    lines.append("  subgroups:")
    for sname in sorted(e.subgroups):
        s = e.subgroups[sname]
        note = f" — {s.provenance}" if s.provenance else ""
        lines.append(f"    {sname}: order {s.order}{note}")
    if e.rows:
        lines.append("  named rows:")
        for rname in sorted(e.rows):
            spec = e.rows[rname]
            lines.append(
                f"    {rname}: subgroup {spec['subgroup']}, character "
                f"degree {spec['chi']['degree']} #{spec['chi']['index']}, "
                f"twist order {spec['nu']['order']} #{spec['nu']['index']}"
            )
    if e.crosses:
        lines.append("  named cross rows:")
        for cname in sorted(e.crosses):
            spec = e.crosses[cname]
            lines.append(
                f"    {cname}: ({spec['subgroup1']}, twist order "
                f"{spec['nu1']['order']} #{spec['nu1']['index']}) x "
                f"({spec['subgroup2']}, twist order "
                f"{spec['nu2']['order']} #{spec['nu2']['index']}), character "
                f"degree {spec['chi']['degree']} #{spec['chi']['index']}"
            )
    payload = {
        "name": e.name, "degree": e.degree, "order": e.order,
        "provenance": e.provenance, "generators": e.generators,
        "subgroups": {n: {"order": s.order, "provenance": s.provenance,
                          "generators": s.generators}
                      for n, s in e.subgroups.items()},
        "rows": e.rows, "crosses": e.crosses,
    }
    return EXIT_OK, payload, lines


# --------------------------------------------------------------------------
# chartab
# --------------------------------------------------------------------------


def _chartab_payload(ctx: Context) -> dict:
    table = ctx.table()
    classes = [
        {"representative": list(c.rep.images), "size": c.size,
         "element_order": c.element_order}
        for c in table.classes.classes
    ]
    rows = [
        {"degree": r.degree, "values": [_val_json(v) for v in r.values]}
        for r in table.rows
    ]
    return {"group": ctx.entry.name, "order": ctx.entry.order,
            "classes": classes, "rows": rows}


def _cmd_chartab(args, cache):
    ctx = Context.open(args.group, cache=cache)
    payload = None
    key = None
    if cache is not None:
        key = DiskCache.key("chartab", ctx.entry.name, ctx.entry.generators)
        payload = cache.load(key)
    if payload is None:
        payload = _chartab_payload(ctx)
        if cache is not None:
            cache.store(key, payload)
    lines = [f"character table of {payload['group']} "
             f"(order {payload['order']}, {len(payload['classes'])} classes)"]
    lines.append("classes (representative, size, element order):")
    for k, c in enumerate(payload["classes"]):
        rep = _cycles(bytes(b - 1 for b in c["representative"]))
        lines.append(f"  K{k}: {rep}  size {c['size']}  "
                     f"order {c['element_order']}")
    lines.append("irreducible characters (values on K0..):")
    for r, row in enumerate(payload["rows"]):
        vals = "; ".join(v["exact"] for v in row["values"])
        lines.append(f"  X{r} (degree {row['degree']}): {vals}")
    return EXIT_OK, payload, lines


# --------------------------------------------------------------------------
# tsf / cross
# --------------------------------------------------------------------------


def _cmd_tsf(args, cache):
    ctx = Context.open(args.group, cache=cache)
    row = ctx.row_for(
        args.subgroup,
        {"degree": args.char_degree, "index": args.char_index},
        {"order": args.nu_order, "index": args.nu_index},
    )
    lines = [
        f"twisted spherical function on {args.group}",
        f"  subgroup {args.subgroup} (order {row.subgroup.order}), character "
        f"degree {args.char_degree} #{args.char_index}, twist order "
        f"{args.nu_order} #{args.nu_index}",
        f"  multiplicity of the character in the induced module: {row.k}",
        f"  cells on double cosets: {len(row.cells)}",
        f"  bracket row: {bracket_row(row.cells)}",
        "  cells (representative, size, value):",
    ]
    lines.extend(
        f"    {_cycles(c.rep)}  size {c.size}  value {value_str(c.value)}"
        for c in row.cells
    )
    payload = {
        "group": args.group, "subgroup": args.subgroup,
        "character": {"degree": args.char_degree, "index": args.char_index},
        "twist": {"order": args.nu_order, "index": args.nu_index},
        "multiplicity": row.k,
        "cells": _cells_json(row.cells),
        "bracket_row": bracket_row(row.cells),
    }
    return EXIT_OK, payload, lines


def _cmd_cross(args, cache):
    ctx = Context.open(args.group, cache=cache)
    row = ctx.cross_for(
        args.subgroup1, {"order": args.nu1_order, "index": args.nu1_index},
        args.subgroup2, {"order": args.nu2_order, "index": args.nu2_index},
        {"degree": args.char_degree, "index": args.char_index},
    )
    lines = [
        f"cross-Gram row on {args.group}",
        f"  pair 1: subgroup {args.subgroup1} (order {row.subgroup1.order}), "
        f"twist order {args.nu1_order} #{args.nu1_index}",
        f"  pair 2: subgroup {args.subgroup2} (order {row.subgroup2.order}), "
        f"twist order {args.nu2_order} #{args.nu2_index}",
        f"  character degree {args.char_degree} #{args.char_index}",
        "  values are pinned modulo one overall unit phase",
        f"  cells on double cosets: {len(row.cells)}",
        f"  bracket row: {bracket_row(row.cells)}",
        "  cells (representative, size, value):",
    ]
    lines.extend(
        f"    {_cycles(c.rep)}  size {c.size}  value {value_str(c.value)}"
        for c in row.cells
    )
    payload = {
        "group": args.group,
        "pair1": {"subgroup": args.subgroup1,
                  "twist": {"order": args.nu1_order, "index": args.nu1_index}},
        "pair2": {"subgroup": args.subgroup2,
                  "twist": {"order": args.nu2_order, "index": args.nu2_index}},
        "character": {"degree": args.char_degree, "index": args.char_index},
        "modulo_phase": True,
        "cells": _cells_json(row.cells),
        "bracket_row": bracket_row(row.cells),
    }
    return EXIT_OK, payload, lines


# --------------------------------------------------------------------------
# code build / verify
# --------------------------------------------------------------------------


def _angle_lines(union: LineSystemUnion) -> list[str]:
    out = []
    for e in union.angles:
        mod = value_str(e.modulus) if e.modulus is not None \
            else f"sqrt({value_str(e.abs_squared)})"
        out.append(f"    squared {value_str(e.abs_squared)}  modulus {mod}  "
                   f"ordered pairs {e.count}")
    return out


def _union_payload(name, union: LineSystemUnion) -> dict:
    coh = coherence(union, union.reference)
    return {
        "recipe": name, "kind": "line-union",
        "lines": union.line_count,
        "angles": [
            {"abs_squared": _val_json(e.abs_squared),
             "modulus": _val_json(e.modulus) if e.modulus is not None else None,
             "ordered_pairs": e.count}
            for e in union.angles
        ],
        "coherence": {"decimal": coh.decimal,
                      "exact": pretty(coh.modulus) if coh.modulus is not None
                      else None,
                      "reference": coh.reference},
    }


def _built_lines(name, built: BuiltCode) -> list[str]:
    coded = built.coded
    lines = [f"recipe: {name} (kissing-code)",
             f"dimension: {built.dimension}",
             f"vectors: {coded.n}", "blocks:"]
    for label, start, stop in coded.block_slices:
        lines.append(f"  {label}: {stop - start} vectors")
    if built.assembly is not None:
        resolved = ", ".join(
            f"{built.assembly.blocks[p].label} = {pretty(v)}"
            for p, v in sorted(built.chosen_phases.items())
        )
        if resolved:
            lines.append(f"resolved phases: {resolved}")
    vals = ", ".join(value_str(v) for v in coded.entry_value_set())
    lines.append(f"entry values: {vals}")
    return lines


def _built_payload(name, built: BuiltCode) -> dict:
    coded = built.coded
    payload = {
        "recipe": name, "kind": "kissing-code",
        "dimension": built.dimension, "vectors": coded.n,
        "blocks": [{"label": label, "size": stop - start}
                   for label, start, stop in coded.block_slices],
        "entry_values": [_val_json(v) for v in coded.entry_value_set()],
    }
    if built.assembly is not None:
        payload["resolved_phases"] = {
            built.assembly.blocks[p].label: _val_json(v)
            for p, v in sorted(built.chosen_phases.items())
        }
    return payload


def _export_built(built: BuiltCode, path: str) -> tuple[str, int]:
    """One vector per line; exact cyclotomic entries when every block is an
    explicit construction, certified-decimal coordinates otherwise."""
    asm = built.assembly
    exact = (asm is not None
             and all(hasattr(b.source, "code") for b in asm.blocks))
    out = []
    if exact:
        dim = asm.blocks[0].source.code.dimension
        header = {"vectors": built.coded.n, "dimension": dim,
                  "field": "complex", "entries": "exact-cyclotomic"}
        out.append(json.dumps(header, sort_keys=True))
        for p, b in enumerate(asm.blocks):
            phase = asm.total_phase(p)
            for vec in b.source.code.vectors:
                row = [(phase * x).to_dict() for x in vec]
                out.append(json.dumps(row, sort_keys=True))
        kind = "exact"
    else:
        coords = embed_vectors_from_gram(built.coded, built.dimension)
        coords = np.asarray(coords)
        if np.iscomplexobj(coords):
            coords = coords.real if np.abs(coords.imag).max() < 1e-12 \
                else coords
        header = {"vectors": int(coords.shape[0]),
                  "dimension": int(coords.shape[1]),
                  "field": "complex" if np.iscomplexobj(coords) else "real",
                  "entries": "decimal"}
        out.append(json.dumps(header, sort_keys=True))
        for vec in coords:
            if np.iscomplexobj(coords):
                row = [[float(x.real), float(x.imag)] for x in vec]
            else:
                row = [float(x) for x in vec]
            out.append(json.dumps(row))
        kind = "decimal"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
    return kind, len(out) - 1


def _cmd_code(args, cache):
    recipe = load_recipe(args.recipe)
    name = recipe.get("name", args.recipe)
    built = build_recipe(recipe, cache)

    if args.action == "build":
        if isinstance(built, LineSystemUnion):
            if args.export:
                raise InputError(
                    "a line-union recipe has no vector realization to export"
                )
            coh = coherence(built, built.reference)
            lines = [f"recipe: {name} (line-union)",
                     f"lines: {built.line_count}",
                     "angles:", *_angle_lines(built),
                     *("  " + s for s in coh.lines())]
            return EXIT_OK, _union_payload(name, built), lines
        lines = _built_lines(name, built)
        payload = _built_payload(name, built)
        if args.export:
            kind, nvec = _export_built(built, args.export)
            lines.append(f"exported {nvec} vectors ({kind} entries) "
                         f"to {args.export}")
            payload["export"] = {"path": args.export, "vectors": nvec,
                                 "entries": kind}
        return EXIT_OK, payload, lines

    # verify
    if isinstance(built, LineSystemUnion):
        raise InputError("code verify applies to kissing-code recipes; "
                         "use `code build` to summarize a line union")
    dim = args.dim if args.dim is not None else built.dimension
    report = verify_kissing(built.coded, dim)
    lines = [f"recipe: {name} (kissing-code, dimension bound {dim})"]
    lines.extend("  " + s for s in report.lines())
    payload = {
        "recipe": name, "dimension": dim, "vectors": report.count,
        "max_real": _val_json(report.max_real),
        "max_pair_labels": list(report.max_pair_labels),
        "duplicate_pairs": len(report.duplicate_pairs),
        "min_eigenvalue": report.min_eigenvalue,
        "tolerance": report.tolerance,
        "rank": report.rank,
        "entry_values": [_val_json(v) for v in report.entry_values],
        "verdict": report.verdict,
    }
    return (EXIT_OK if report.verdict else EXIT_MISMATCH), payload, lines


# --------------------------------------------------------------------------
# reproduce / cache
# --------------------------------------------------------------------------


def _cmd_reproduce(args, cache):
    report = reproduce(args.example, cache)
    return report.exit_code, report.to_json(), report.to_text().splitlines()


def _cmd_cache(args, cache):
    store = cache if cache is not None else DiskCache(args.cache_dir)
    removed = store.clear()
    lines = [f"removed {removed} cached entries from {store.root}"]
    return EXIT_OK, {"removed": removed, "root": str(store.root)}, lines


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _common_flags(suppress: bool) -> _Parser:
    # Subparsers copy every parsed attribute back onto the root namespace,
    # so their copies of these flags default to SUPPRESS: a flag given
    # before the subcommand survives unless repeated after it.
    p = _Parser(add_help=False)
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true",
                   default=argparse.SUPPRESS if suppress else False,
                   help="emit structured output")
    p.add_argument("--cache-dir", metavar="PATH", default=d,
                   help="row cache directory (default: "
                        "$SYMFRAMES_CACHE_DIR or ~/.cache/symframes)")
    p.add_argument("--no-cache", action="store_true",
                   default=argparse.SUPPRESS if suppress else False,
                   help="do not read or write the disk cache")
    return p


def _build_parser() -> _Parser:
    root_common = _common_flags(suppress=False)
    common = _common_flags(suppress=True)

    parser = _Parser(prog="symframes", parents=[root_common],
                     description="group frames, line systems, and spherical "
                                 "codes from finite-group data")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p_group = sub.add_parser("group", parents=[common],
                             help="catalog inspection")
    gsub = p_group.add_subparsers(dest="action", required=True,
                                  parser_class=_Parser)
    gsub.add_parser("list", parents=[common],
                    help="list catalog entries").set_defaults(func=_cmd_group)
    p_info = gsub.add_parser("info", parents=[common],
                             help="verify and describe one entry")
    p_info.add_argument("name")
    p_info.set_defaults(func=_cmd_group)

    p_ct = sub.add_parser("chartab", parents=[common],
                          help="exact character table")
    p_ct.add_argument("group")
    p_ct.set_defaults(func=_cmd_chartab)

    p_tsf = sub.add_parser("tsf", parents=[common],
                           help="twisted spherical function bracket row")
    p_tsf.add_argument("--group", required=True)
    p_tsf.add_argument("--subgroup", required=True)
    p_tsf.add_argument("--char-degree", type=int, required=True)
    p_tsf.add_argument("--char-index", type=int, default=0)
    p_tsf.add_argument("--nu-order", type=int, default=1)
    p_tsf.add_argument("--nu-index", type=int, default=0)
    p_tsf.set_defaults(func=_cmd_tsf)

    p_cross = sub.add_parser("cross", parents=[common],
                             help="cross-Gram bracket row")
    p_cross.add_argument("--group", required=True)
    p_cross.add_argument("--subgroup1", required=True)
    p_cross.add_argument("--nu1-order", type=int, default=1)
    p_cross.add_argument("--nu1-index", type=int, default=0)
    p_cross.add_argument("--subgroup2", required=True)
    p_cross.add_argument("--nu2-order", type=int, default=1)
    p_cross.add_argument("--nu2-index", type=int, default=0)
    p_cross.add_argument("--char-degree", type=int, required=True)
    p_cross.add_argument("--char-index", type=int, default=0)
    p_cross.set_defaults(func=_cmd_cross)

    p_code = sub.add_parser("code", parents=[common],
                            help="build or verify a recipe")
    csub = p_code.add_subparsers(dest="action", required=True,
                                 parser_class=_Parser)
    p_build = csub.add_parser("build", parents=[common],
                              help="assemble a recipe and summarize it")
    p_build.add_argument("--recipe", required=True,
                         help="bundled recipe name or a recipe file path")
    p_build.add_argument("--export", metavar="PATH", default=None,
                         help="write coordinates, one vector per line")
    p_build.set_defaults(func=_cmd_code)
    p_verify = csub.add_parser("verify", parents=[common],
                               help="certify a kissing configuration")
    p_verify.add_argument("--recipe", required=True)
    p_verify.add_argument("--dim", type=int, default=None,
                          help="dimension bound (default: recipe dimension)")
    p_verify.set_defaults(func=_cmd_code)

    p_rep = sub.add_parser("reproduce", parents=[common],
                           help="run a documented example end to end")
    p_rep.add_argument("example", metavar="ID",
                       help=f"one of: {', '.join(example_ids())}")
    p_rep.set_defaults(func=_cmd_reproduce)

    p_cache = sub.add_parser("cache", parents=[common],
                             help="disk cache control")
    cachesub = p_cache.add_subparsers(dest="action", required=True,
                                      parser_class=_Parser)
    cachesub.add_parser("clear", parents=[common],
                        help="remove all cached rows").set_defaults(
        func=_cmd_cache)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = None if args.no_cache else DiskCache(args.cache_dir)
    try:
        code, payload, lines = args.func(args, cache)
    except ExpectationMismatch as exc:
        _emit_error(args, "ExpectationMismatch", exc)
        return EXIT_MISMATCH
    except InvariantViolation as exc:
        _emit_error(args, "InvariantViolation", exc)
        return EXIT_INTERNAL
    except SymframesError as exc:
        _emit_error(args, type(exc).__name__, exc)
        return EXIT_INPUT
    except Exception as exc:   # noqa: BLE001 — crash boundary of the CLI
        traceback.print_exc()
        _emit_error(args, type(exc).__name__, exc)
        return EXIT_INTERNAL
    try:
        if args.json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            print("\n".join(lines))
    except BrokenPipeError:
        try:
            sys.stdout.close()
        except OSError:
            pass
    return code


def _emit_error(args, kind: str, exc: BaseException) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"error": kind, "message": str(exc)}, indent=2),
              file=sys.stderr)
    else:
        print(f"error ({kind}): {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
