"""Recipe files: structured descriptions of code assemblies and line unions.

A recipe is a JSON object with a "kind":

  kissing-code  blocks (frame rows by name, or named explicit constructions)
                with per-block phases, optional "resolve" flags, named cross
                rows, and a phase-candidate count; or a named lift of a base
                recipe ("lift": "append-axis").
  line-union    two named line systems joined by a named cross row, with an
                optional coherence reference bound.

Phases are written as short strings: "1", "-1", "i", "-i", "zetaN",
"zetaN^K" (optionally with a leading "-").
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..codes import (
    BlockSpec,
    ExplicitBlock,
    FrameBlock,
    GramAssembly,
    LineSystemUnion,
    assemble_union,
    build_code_r11,
    construct_d7_scaled,
    construct_e7_shell,
    construct_phi3,
    resolve_cross_phase,
    union_line_system,
)
from ..cyclo import Cyclotomic
from ..errors import ParseError
from .catalog import RECIPE_DIR, Context
from .cache import DiskCache

_PHASE_RE = re.compile(r"^(-)?(1|i|zeta(\d+)(?:\^(\d+))?)$")


def parse_phase(text: str) -> Cyclotomic:
    m = _PHASE_RE.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse phase {text!r}")
    neg, body, order, power = m.groups()
    if body == "1":
        out = Cyclotomic.one()
    elif body == "i":
        out = Cyclotomic.root_of_unity(4, 1)
    else:
        out = Cyclotomic.root_of_unity(int(order), int(power or 1))
    return -out if neg else out


_REAL_RE = re.compile(r"^sqrt\((\d+)(?:/(\d+))?\)$")


def parse_reference(text: str) -> float:
    """A reference bound: "sqrt(p/q)", "p/q", or a decimal literal."""
    text = text.strip()
    m = _REAL_RE.match(text)
    if m:
        p, q = int(m.group(1)), int(m.group(2) or 1)
        return math.sqrt(p / q)
    if "/" in text:
        f = Fraction(text)
        return f.numerator / f.denominator
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"cannot parse reference bound {text!r}") from None


def load_recipe(name_or_path: str) -> dict:
    """A bundled recipe by name, or any recipe file by path."""
    cand = Path(name_or_path)
    if not cand.suffix and "/" not in name_or_path:
        cand = RECIPE_DIR / f"{name_or_path}.json"
    try:
        text = cand.read_text(encoding="utf-8")
    except OSError as exc:
        bundled = ", ".join(sorted(p.stem for p in RECIPE_DIR.glob("*.json")))
        raise ParseError(
            f"cannot read recipe {name_or_path!r} ({exc}); bundled recipes: {bundled}"
        ) from None
    try:
        recipe = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"recipe {name_or_path!r} does not parse: {exc}") from None
    if not isinstance(recipe, dict) or "kind" not in recipe:
        raise ParseError(f"recipe {name_or_path!r} must be an object with a 'kind'")
    return recipe


@dataclass
class BuiltCode:
    recipe: dict
    assembly: GramAssembly | None
    coded: object                       # CodedGram
    chosen_phases: dict[int, Cyclotomic]
    dimension: int


_EXPLICIT_BUILDERS = ("phi3", "e7-shell", "d7-scaled")


class _ExplicitPool:
    """Shared construction of the named explicit codes within one build."""

    def __init__(self):
        self._shell = None
        self._phi3 = None
        self._d7 = None

    def get(self, name: str):
        if name == "e7-shell":
            if self._shell is None:
                self._shell = construct_e7_shell()
            return self._shell
        if name == "phi3":
            if self._phi3 is None:
                self._phi3 = construct_phi3(self.get("e7-shell"))
            return self._phi3
        if name == "d7-scaled":
            if self._d7 is None:
                self._d7 = construct_d7_scaled()
            return self._d7
        raise ParseError(
            f"unknown explicit construction {name!r}; "
            f"known: {', '.join(_EXPLICIT_BUILDERS)}"
        )


def build_recipe(recipe: dict, cache: DiskCache | None = None):
    """Run a recipe: BuiltCode for kissing codes, LineSystemUnion for unions."""
    kind = recipe.get("kind")
    if kind == "kissing-code":
        return _build_code(recipe, cache)
    if kind == "line-union":
        return _build_union(recipe, cache)
    raise ParseError(f"unknown recipe kind {kind!r}")


def _context(recipe: dict, cache) -> Context:
    group = recipe.get("group")
    if not group:
        raise ParseError("recipe names no group")
    return Context.open(group, cache=cache)


def _build_code(recipe: dict, cache) -> BuiltCode:
    if recipe.get("lift") == "append-axis":
        base = build_recipe(load_recipe(recipe["base"]), cache)
        coded = build_code_r11(base.assembly)
        return BuiltCode(recipe, None, coded, base.chosen_phases,
                         int(recipe.get("dimension", 11)))
    if "lift" in recipe:
        raise ParseError(f"unknown lift kind {recipe['lift']!r}")
    blocks_spec = recipe.get("blocks")
    if not blocks_spec:
        raise ParseError("kissing-code recipe has no blocks")
    pool = _ExplicitPool()
    ctx: Context | None = None
    frame_blocks: dict[str, FrameBlock] = {}
    explicit_blocks: dict[str, ExplicitBlock] = {}
    blocks: list[BlockSpec] = []
    for b in blocks_spec:
        phase = parse_phase(b.get("phase", "1"))
        resolve = bool(b.get("resolve", False))
        label = b.get("label")
        if "row" in b:
            if ctx is None:
                ctx = _context(recipe, cache)
            src = frame_blocks.get(b["row"])
            if src is None:
                src = FrameBlock(ctx.summary(b["row"]), b["row"])
                frame_blocks[b["row"]] = src
        elif "explicit" in b:
            src = explicit_blocks.get(b["explicit"])
            if src is None:
                src = ExplicitBlock(pool.get(b["explicit"]), b["explicit"])
                explicit_blocks[b["explicit"]] = src
        else:
            raise ParseError(f"block {b!r} names neither a row nor an explicit code")
        blocks.append(BlockSpec(src, phase, resolve, label))
    crosses = []
    for cname in recipe.get("crosses", []):
        if ctx is None:
            ctx = _context(recipe, cache)
        crosses.append(ctx.cross(cname))
    asm = assemble_union(blocks, crosses)
    chosen = resolve_cross_phase(asm, candidates=recipe.get("phase_candidates"))
    return BuiltCode(recipe, asm, asm.materialize(), chosen,
                     int(recipe.get("dimension", asm.dimension)))


def _build_union(recipe: dict, cache) -> LineSystemUnion:
    ctx = _context(recipe, cache)
    names = recipe.get("systems", [])
    if len(names) != 2:
        raise ParseError("line-union recipe needs exactly two systems")
    s1, s2 = (ctx.summary(n) for n in names)
    cross = ctx.cross(recipe["cross"])
    union = union_line_system(s1, s2, cross)
    ref = recipe.get("coherence_reference")
    union.reference = parse_reference(ref) if ref else None
    return union
