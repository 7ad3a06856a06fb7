"""Named group catalog: loading, verification, selector resolution, row cache.

The bundled catalog file stores, per named group: degree, generators
(1-based image lists), stated order, named subgroups, and the character
selectors pinning each named row and cross row.  Selectors are positional
and deterministic:

  * a character selector {"degree": d, "index": i} picks the i-th row of
    degree d in character-table order;
  * a linear-character selector {"order": m, "index": j} picks the j-th
    character of order m in the deterministic linear_characters order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..chartab import character_table, linear_characters
from ..errors import (
    OrderMismatch,
    ParseError,
    SubgroupNotContained,
    UnknownName,
)
from ..frames import (
    Cell,
    CrossGramRow,
    TwistedSphericalRow,
    _phase_table,
    cross_row,
    homogenize,
    twisted_spherical,
)
from ..permcore import Permutation, PermutationGroup
from ..cyclo import Cyclotomic
from .cache import DiskCache

DATA_PATH = Path(__file__).resolve().parent.parent / "data" / "groups.json"
RECIPE_DIR = Path(__file__).resolve().parent.parent / "data" / "recipes"


@dataclass
class SubgroupEntry:
    order: int
    generators: list[list[int]]
    provenance: str = ""


@dataclass
class CatalogEntry:
    name: str
    degree: int
    order: int
    generators: list[list[int]]
    provenance: str = ""
    subgroups: dict[str, SubgroupEntry] = field(default_factory=dict)
    rows: dict[str, dict] = field(default_factory=dict)
    crosses: dict[str, dict] = field(default_factory=dict)


def _parse_generator(name: str, degree: int, kind: str, idx: int, images) -> Permutation:
    if (not isinstance(images, list) or len(images) != degree
            or sorted(images) != list(range(1, degree + 1))):
        raise ParseError(
            f"catalog entry {name!r}: {kind} generator line {idx + 1} is not a "
            f"bijection of 1..{degree}: {images!r}"
        )
    return Permutation.from_images(images)


def _parse_entry(name: str, raw: dict) -> CatalogEntry:
    try:
        degree = int(raw["degree"])
        order = int(raw["order"])
        gens = raw["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"catalog entry {name!r}: malformed fields ({exc})") from None
    entry = CatalogEntry(
        name=name, degree=degree, order=order, generators=gens,
        provenance=raw.get("provenance", ""),
        rows=raw.get("rows", {}), crosses=raw.get("crosses", {}),
    )
    for gi, images in enumerate(gens):
        _parse_generator(name, degree, "group", gi, images)
    for sname, sraw in raw.get("subgroups", {}).items():
        try:
            sorder = int(sraw["order"])
            sgens = sraw["generators"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(
                f"catalog entry {name!r}: subgroup {sname!r} malformed ({exc})"
            ) from None
        for gi, images in enumerate(sgens):
            _parse_generator(name, degree, f"subgroup {sname!r}", gi, images)
        entry.subgroups[sname] = SubgroupEntry(
            order=sorder, generators=sgens, provenance=sraw.get("provenance", ""),
        )
    return entry


def _parse_catalog_text(text: str) -> dict[str, CatalogEntry]:
    if not text.strip():
        return {}
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalog does not parse: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError("catalog root must be an object of named entries")
    return {name: _parse_entry(name, entry) for name, entry in raw.items()}


def _verify_entry(entry: CatalogEntry) -> tuple[PermutationGroup, dict[str, PermutationGroup]]:
    gens = [Permutation.from_images(g) for g in entry.generators]
    G = PermutationGroup(entry.degree, gens, cap=max(200_000, 2 * entry.order))
    if G.order != entry.order:
        raise OrderMismatch(
            f"catalog entry {entry.name!r}: generators produce order {G.order}, "
            f"stated {entry.order}"
        )
    subs: dict[str, PermutationGroup] = {}
    for sname, sub in entry.subgroups.items():
        sgens = [Permutation.from_images(g) for g in sub.generators]
        S = PermutationGroup(entry.degree, sgens, cap=max(200_000, 2 * sub.order))
        if S.order != sub.order:
            raise OrderMismatch(
                f"catalog entry {entry.name!r}: subgroup {sname!r} has order "
                f"{S.order}, stated {sub.order}"
            )
        if not S.is_subgroup_of(G):
            raise SubgroupNotContained(
                f"catalog entry {entry.name!r}: subgroup {sname!r} is not "
                f"contained in the group"
            )
        subs[sname] = S
    return G, subs


def load_catalog(path: Path | str | None = None, verify: bool = True):
    """Parse (and by default fully verify) the catalog; returns {name: entry}."""
    src = Path(path) if path is not None else DATA_PATH
    try:
        text = src.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read catalog {src}: {exc}") from None
    catalog = _parse_catalog_text(text)
    if verify:
        for entry in catalog.values():
            _verify_entry(entry)
    return catalog


class Context:
    """One catalog entry, loaded and verified, with cached derived objects."""

    def __init__(self, entry: CatalogEntry, cache: DiskCache | None = None):
        self.entry = entry
        self.cache = cache
        self.group, self.subgroups = _verify_entry(entry)
        self._table = None
        self._nus: dict[str, list] = {}
        self._rows: dict[str, TwistedSphericalRow] = {}
        self._crosses: dict[str, CrossGramRow] = {}
        self._summaries: dict[str, object] = {}

    @classmethod
    def open(cls, name: str, path: Path | str | None = None,
             cache: DiskCache | None = None) -> "Context":
        catalog = load_catalog(path, verify=False)
        if name not in catalog:
            raise UnknownName(
                f"no catalog entry {name!r}; available: {', '.join(sorted(catalog))}"
            )
        return cls(catalog[name], cache)

    # -- selector resolution -------------------------------------------------

    def table(self):
        if self._table is None:
            self._table = character_table(self.group)
        return self._table

    def subgroup(self, name: str) -> PermutationGroup:
        try:
            return self.subgroups[name]
        except KeyError:
            raise UnknownName(
                f"group {self.entry.name!r} has no subgroup {name!r}; "
                f"available: {', '.join(sorted(self.subgroups))}"
            ) from None

    def linear_chars(self, subgroup_name: str):
        got = self._nus.get(subgroup_name)
        if got is None:
            got = linear_characters(self.subgroup(subgroup_name))
            self._nus[subgroup_name] = got
        return got

    def resolve_chi(self, selector: dict):
        degree = int(selector["degree"])
        index = int(selector["index"])
        same = [r for r in self.table().rows if r.degree == degree]
        if index >= len(same):
            raise UnknownName(
                f"group {self.entry.name!r} has {len(same)} characters of "
                f"degree {degree}; index {index} is out of range"
            )
        return same[index]

    def resolve_nu(self, subgroup_name: str, selector: dict):
        order = int(selector["order"])
        index = int(selector["index"])
        same = [n for n in self.linear_chars(subgroup_name) if n.order == order]
        if index >= len(same):
            raise UnknownName(
                f"subgroup {subgroup_name!r} has {len(same)} linear characters "
                f"of order {order}; index {index} is out of range"
            )
        return same[index]

    # -- cached rows -----------------------------------------------------------

    def _row_cache_key(self, kind: str, spec: dict) -> str:
        parts = [kind, self.entry.generators]
        if kind == "tsf":
            parts += [self.entry.subgroups[spec["subgroup"]].generators,
                      spec["chi"], spec["nu"]]
        else:
            parts += [self.entry.subgroups[spec["subgroup1"]].generators,
                      self.entry.subgroups[spec["subgroup2"]].generators,
                      spec["chi"], spec["nu1"], spec["nu2"]]
        return DiskCache.key(*parts)

    def row_for(self, subgroup_name: str, chi_selector: dict,
                nu_selector: dict) -> TwistedSphericalRow:
        """Row for arbitrary selectors, disk-cached like the named rows."""
        spec = {"subgroup": subgroup_name, "chi": dict(chi_selector),
                "nu": dict(nu_selector)}
        H = self.subgroup(spec["subgroup"])
        chi = self.resolve_chi(spec["chi"])
        nu = self.resolve_nu(spec["subgroup"], spec["nu"])
        row = None
        key = None
        if self.cache is not None:
            key = self._row_cache_key("tsf", spec)
            payload = self.cache.load(key)
            if payload is not None:
                row = self._rebuild_tsf(payload, H, chi, nu)
        if row is None:
            row = twisted_spherical(self.group, chi, H, nu)
            if self.cache is not None:
                self.cache.store(key, self._dump_tsf(row))
        return row

    def row(self, name: str) -> TwistedSphericalRow:
        got = self._rows.get(name)
        if got is not None:
            return got
        spec = self.entry.rows.get(name)
        if spec is None:
            raise UnknownName(
                f"group {self.entry.name!r} has no row {name!r}; "
                f"available: {', '.join(sorted(self.entry.rows))}"
            )
        row = self.row_for(spec["subgroup"], spec["chi"], spec["nu"])
        self._rows[name] = row
        return row

    def cross_for(self, subgroup1: str, nu1_selector: dict, subgroup2: str,
                  nu2_selector: dict, chi_selector: dict) -> CrossGramRow:
        """Cross row for arbitrary selectors, disk-cached like named ones."""
        spec = {"subgroup1": subgroup1, "subgroup2": subgroup2,
                "chi": dict(chi_selector), "nu1": dict(nu1_selector),
                "nu2": dict(nu2_selector)}
        H1 = self.subgroup(spec["subgroup1"])
        H2 = self.subgroup(spec["subgroup2"])
        chi = self.resolve_chi(spec["chi"])
        nu1 = self.resolve_nu(spec["subgroup1"], spec["nu1"])
        nu2 = self.resolve_nu(spec["subgroup2"], spec["nu2"])
        row = None
        key = None
        if self.cache is not None:
            key = self._row_cache_key("cross", spec)
            payload = self.cache.load(key)
            if payload is not None:
                row = self._rebuild_cross(payload, H1, nu1, H2, nu2, chi)
        if row is None:
            row = cross_row(self.group, chi, H1, nu1, H2, nu2)
            if self.cache is not None:
                self.cache.store(key, self._dump_cross(row))
        return row

    def cross(self, name: str) -> CrossGramRow:
        got = self._crosses.get(name)
        if got is not None:
            return got
        spec = self.entry.crosses.get(name)
        if spec is None:
            raise UnknownName(
                f"group {self.entry.name!r} has no cross row {name!r}; "
                f"available: {', '.join(sorted(self.entry.crosses))}"
            )
        row = self.cross_for(spec["subgroup1"], spec["nu1"],
                             spec["subgroup2"], spec["nu2"], spec["chi"])
        self._crosses[name] = row
        return row

    def summary(self, name: str):
        got = self._summaries.get(name)
        if got is None:
            got = homogenize(self.row(name))
            self._summaries[name] = got
        return got

    # -- row (de)serialization ----------------------------------------------

    def _dump_cells(self, row) -> list:
        return [
            {"rep": [b + 1 for b in cell.rep], "size": cell.size,
             "value": cell.value.to_dict()}
            for cell in row.cells
        ]

    def _dump_tsf(self, row: TwistedSphericalRow) -> dict:
        return {"kind": "tsf", "m": row._m, "k": row.k,
                "cells": self._dump_cells(row)}

    def _dump_cross(self, row: CrossGramRow) -> dict:
        return {"kind": "cross", "m": row._m,
                "chosen_a": [b + 1 for b in row.chosen_a],
                "scale": row.scale.to_dict(),
                "cells": self._dump_cells(row)}

    def _load_cells(self, payload, cells_computed):
        stored = payload["cells"]
        if len(stored) != len(cells_computed):
            return None
        out = []
        for rec, (rep, size) in zip(stored, cells_computed):
            if bytes(b - 1 for b in rec["rep"]) != rep or rec["size"] != size:
                return None
            out.append(Cell(rep, size, Cyclotomic.from_dict(rec["value"])))
        return out

    def _rebuild_tsf(self, payload, H, chi, nu):
        m, raw_cells, table = _phase_table(self.group, H, nu, H, nu)
        if payload.get("m") != m:
            return None
        cells = self._load_cells(payload, raw_cells)
        if cells is None:
            return None
        return TwistedSphericalRow(self.group, H, chi, nu,
                                   int(payload["k"]), cells, table, m)

    def _rebuild_cross(self, payload, H1, nu1, H2, nu2, chi):
        m, raw_cells, table = _phase_table(self.group, H1, nu1, H2, nu2)
        if payload.get("m") != m:
            return None
        cells = self._load_cells(payload, raw_cells)
        if cells is None:
            return None
        return CrossGramRow(self.group, chi, H1, nu1, H2, nu2, cells, table, m,
                            bytes(b - 1 for b in payload["chosen_a"]),
                            Cyclotomic.from_dict(payload["scale"]))
