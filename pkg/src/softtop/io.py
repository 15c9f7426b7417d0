"""JSON documents for spaces, mappings and embedding-lemma configurations.

Space document::

    {"universe": ["a", "b"], "params": ["e1", "e2"],
     "soft_sets": {"F": {"e1": ["a"]}},
     "topology": ["null", "absolute", "F"]}

``topology`` is a list of names, or one of ``"discrete"``, ``"indiscrete"``
or ``"generate"`` (the last with a ``"subbase"`` name list).  The names
``null`` and ``absolute`` are always defined.  A parameter missing from a
soft set has an empty row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from softtop.errors import AxiomViolation, ParseError, UnknownLabel
from softtop.mappings import SoftMapping
from softtop.sets import Context, SoftSet
from softtop.topology import SoftSpace, SoftTopology, generate_from_subbase, verify_axioms

RESERVED = ("null", "absolute")
MODES = ("discrete", "indiscrete", "generate")


@dataclass
class SpaceDocument:
    universe: list[str]
    params: list[str]
    soft_sets: dict[str, dict[str, list[str]]] = field(default_factory=dict)
    topology: list[str] | str = "indiscrete"
    subbase: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "universe": self.universe,
            "params": self.params,
            "soft_sets": self.soft_sets,
            "topology": self.topology,
        }
        if self.topology == "generate":
            out["subbase"] = self.subbase
        return out


@dataclass
class MappingDocument:
    phi: dict[str, str]
    psi: dict[str, str]
    src: str | None = None
    dst: str | None = None


def _load(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _labels(raw: Any, name: str) -> list[str]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ParseError(f"'{name}' must be a list of strings", name)
    return raw


def space_document(raw: Any) -> SpaceDocument:
    """Shape-check a decoded JSON object."""
    if not isinstance(raw, dict):
        raise ParseError("a space document must be a JSON object")
    for key in ("universe", "params"):
        if key not in raw:
            raise ParseError(f"missing field '{key}'", key)
    sets = raw.get("soft_sets", {})
    if not isinstance(sets, dict):
        raise ParseError("'soft_sets' must be an object", "soft_sets")
    for name, rows in sets.items():
        if name in RESERVED:
            raise ParseError(f"soft set name '{name}' is reserved", f"soft_sets.{name}")
        if not isinstance(rows, dict):
            raise ParseError(f"soft set '{name}' must map parameters to element lists", f"soft_sets.{name}")
        for p, elems in rows.items():
            _labels(elems, f"soft_sets.{name}.{p}")
    topology = raw.get("topology", "indiscrete")
    if isinstance(topology, str):
        if topology not in MODES:
            raise ParseError(f"unknown topology mode '{topology}'", "topology")
    else:
        topology = _labels(topology, "topology")
    subbase = _labels(raw.get("subbase", []), "subbase")
    if subbase and topology != "generate":
        raise ParseError("'subbase' is only meaningful with topology \"generate\"", "subbase")
    return SpaceDocument(_labels(raw["universe"], "universe"), _labels(raw["params"], "params"), sets, topology, subbase)


def build_space(doc: SpaceDocument) -> tuple[SoftSpace, dict[str, SoftSet]]:
    """Validated space and the soft sets by name (reserved names included)."""
    try:
        ctx = Context(tuple(doc.universe), tuple(doc.params))
    except ValueError as exc:
        raise ParseError(str(exc), "universe/params") from exc
    named = {"null": SoftSet.null(ctx), "absolute": SoftSet.absolute(ctx)}
    for name, rows in doc.soft_sets.items():
        named[name] = SoftSet.from_rows(ctx, rows)

    def lookup(names: list[str], where: str) -> list[SoftSet]:
        missing = [n for n in names if n not in named]
        if missing:
            raise UnknownLabel(f"{where} names undefined soft sets: {', '.join(missing)}")
        return [named[n] for n in names]

    if doc.topology == "discrete":
        topology = SoftTopology.discrete(ctx)
    elif doc.topology == "indiscrete":
        topology = SoftTopology.indiscrete(ctx)
    elif doc.topology == "generate":
        topology = generate_from_subbase(ctx, lookup(doc.subbase, "subbase"))
    else:
        members = lookup(list(doc.topology), "topology")
        verdict = verify_axioms(ctx, members)
        if not verdict.ok:
            by_key: dict[int, str] = {}
            for n in doc.topology:
                by_key.setdefault(named[n].mask, n)
            raise AxiomViolation(verdict, _name_witness(verdict, by_key))
        topology = SoftTopology(ctx, members, check=False)
    return SoftSpace(ctx, topology), named


def _name_witness(verdict, by_key: dict[int, str]) -> str:
    w = verdict.witness
    if isinstance(w, tuple):
        return f"{verdict.kind}({', '.join(by_key.get(F.mask, str(F)) for F in w)})"
    return verdict.kind


def parse_space_with_names(path: str | Path) -> tuple[SoftSpace, dict[str, SoftSet]]:
    return build_space(space_document(_load(path)))


def parse_space(path: str | Path) -> SoftSpace:
    return parse_space_with_names(path)[0]


def mapping_document(raw: Any) -> MappingDocument:
    if not isinstance(raw, dict):
        raise ParseError("a mapping document must be a JSON object")
    for key in ("phi", "psi"):
        table = raw.get(key)
        if not isinstance(table, dict) or not all(isinstance(v, str) for v in table.values()):
            raise ParseError(f"'{key}' must map labels to labels", key)
    for key in ("src", "dst"):
        if key in raw and not isinstance(raw[key], str):
            raise ParseError(f"'{key}' must be a path string", key)
    return MappingDocument(raw["phi"], raw["psi"], raw.get("src"), raw.get("dst"))


def build_mapping(doc: MappingDocument, src: Context, dst: Context) -> SoftMapping:
    try:
        return SoftMapping.from_labels(src, dst, doc.phi, doc.psi)
    except ValueError as exc:
        raise ParseError(str(exc), "phi/psi") from exc


def parse_mapping(path: str | Path, src: Context, dst: Context) -> SoftMapping:
    return build_mapping(mapping_document(_load(path)), src, dst)


def resolve(base: str | Path, ref: str) -> Path:
    """A path referenced from a document, relative to that document's directory."""
    p = Path(ref)
    return p if p.is_absolute() else Path(base).parent / p


def parse_mapping_with_spaces(path: str | Path) -> tuple[SoftMapping, SoftSpace, SoftSpace]:
    """Mapping whose document names its source and target space files."""
    doc = mapping_document(_load(path))
    if doc.src is None or doc.dst is None:
        raise ParseError("mapping document does not name 'src' and 'dst' spaces", "src/dst")
    X = parse_space(resolve(path, doc.src))
    Y = parse_space(resolve(path, doc.dst))
    return build_mapping(doc, X.ctx, Y.ctx), X, Y


def parse_lemma_config(path: str | Path) -> tuple[SoftSpace, list[tuple[SoftSpace, SoftMapping]]]:
    """``{"space": X, "targets": [{"space": Y, "mapping": M}, ...]}`` with file references."""
    raw = _load(path)
    if not isinstance(raw, dict) or not isinstance(raw.get("space"), str):
        raise ParseError("config needs a 'space' path", "space")
    targets_raw = raw.get("targets")
    if not isinstance(targets_raw, list) or not targets_raw:
        raise ParseError("config needs a nonempty 'targets' list", "targets")
    X = parse_space(resolve(path, raw["space"]))
    targets = []
    for k, t in enumerate(targets_raw):
        if not isinstance(t, dict) or not isinstance(t.get("space"), str) or not isinstance(t.get("mapping"), str):
            raise ParseError("each target needs 'space' and 'mapping' paths", f"targets[{k}]")
        Y = parse_space(resolve(path, t["space"]))
        targets.append((Y, parse_mapping(resolve(path, t["mapping"]), X.ctx, Y.ctx)))
    return X, targets


def rows_of(F: SoftSet) -> dict[str, list[str]]:
    """Rows with empty parameters dropped."""
    return {p: us for p, us in F.rows().items() if us}


def emit_space(S: SoftSpace) -> SpaceDocument:
    """Document listing every open set by name ``G<k>`` in canonical order."""
    names, sets = [], {}
    for k, G in enumerate(S.opens):
        if G.is_null():
            names.append("null")
        elif G.is_absolute():
            names.append("absolute")
        else:
            name = f"G{k}"
            names.append(name)
            sets[name] = rows_of(G)
    return SpaceDocument(list(S.ctx.universe), list(S.ctx.params), sets, names)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_space(S: SoftSpace, path: str | Path) -> None:
    Path(path).write_text(dumps(emit_space(S).to_json()), encoding="utf-8", newline="\n")
