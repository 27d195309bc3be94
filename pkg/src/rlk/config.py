"""JSON configuration files: parsing, validation and serialization.

Rationals are written as JSON integers or as strings ``"p"`` / ``"p/q"``.
Decimal literals (``0.5`` or ``"0.5"``) are rejected so that every value
stays exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema

from .extension import CorrectedClass, ExtensionLayer, RealizationMap
from .incidence import AdmissibilityFlags, IncidenceDatum
from .lattice import ComparisonProblem, GroupAction, MissingSides, Side, SideAssignment
from .linalg import RationalMatrix, Subspace

__all__ = [
    "ConfigError",
    "Configuration",
    "CycleSpec",
    "ParseError",
    "SchemaError",
    "SideSpec",
    "bundled_names",
    "format_rational",
    "load_config",
    "parse_config",
    "parse_rational",
    "serialize_config",
]

_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


class ConfigError(Exception):
    pass


class ParseError(ConfigError):
    """The document is not valid JSON."""


class SchemaError(ConfigError):
    """The document does not follow the configuration schema."""


def _schema() -> dict:
    text = resources.files("rlk").joinpath("data/config.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"{value!r} is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"decimal literal {value!r} rejected; write rationals as \"p/q\"")
    if isinstance(value, str) and _RATIONAL.match(value):
        num, _, den = value.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ValueError(f"{value!r} is not an exact rational (expected an integer or \"p/q\")")


def format_rational(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vector(values: Sequence[Any]) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


@dataclass(frozen=True)
class CycleSpec:
    label: str
    incidence_row: tuple[Fraction, ...]
    admissibility: tuple[str, ...] = ()


@dataclass(frozen=True)
class SideSpec:
    labels: tuple[str, ...] | None = None
    matrix: tuple[tuple[Fraction, ...], ...] | None = None


@dataclass(frozen=True)
class Configuration:
    nodes: tuple[str, ...]
    cycles: tuple[CycleSpec, ...]
    corrected_class: tuple[Fraction, ...] | None = None
    mhm_class: tuple[Fraction, ...] | None = None
    realization_diag: tuple[Fraction, ...] | None = None
    sides: dict[str, SideSpec] | None = field(default=None, hash=False)
    group_action: tuple[tuple[int, ...], ...] | None = None
    q_geom_complement: tuple[tuple[Fraction, ...], ...] | None = None

    @property
    def r(self) -> int:
        return len(self.nodes)

    def datum(self) -> IncidenceDatum:
        return IncidenceDatum(
            self.nodes,
            tuple(c.label for c in self.cycles),
            RationalMatrix(len(self.cycles), self.r, tuple(c.incidence_row for c in self.cycles)),
            tuple(AdmissibilityFlags.from_names(c.admissibility) for c in self.cycles),
        )

    def perverse_class(self) -> CorrectedClass | None:
        if self.corrected_class is None:
            return None
        return CorrectedClass(ExtensionLayer.perverse(self.r), self.corrected_class)

    def mhm_corrected_class(self) -> CorrectedClass | None:
        if self.mhm_class is None:
            return None
        return CorrectedClass(ExtensionLayer.mhm(self.r), self.mhm_class)

    def realization(self) -> RealizationMap | None:
        if self.realization_diag is None:
            return None
        return RealizationMap.from_diagonal(ExtensionLayer.mhm(self.r), self.realization_diag)

    def side(self, name: str) -> SideAssignment | None:
        spec = (self.sides or {}).get(name)
        if spec is None:
            return None
        side = Side(name)
        if spec.labels is not None:
            return SideAssignment(side, labels=spec.labels)
        return SideAssignment(side, explicit_matrix=RationalMatrix(len(spec.matrix), self.r, spec.matrix))

    def comparison_problem(self) -> ComparisonProblem:
        res, sm = self.side("res"), self.side("sm")
        if res is None or sm is None:
            raise MissingSides("comparison needs at least the res and sm sides")
        complement = None
        if self.q_geom_complement is not None:
            complement = Subspace.span(self.q_geom_complement, self.r)
        return ComparisonProblem(self.datum(), res, sm, self.side("ext"), complement)

    def group(self) -> GroupAction | None:
        if self.group_action is None:
            return None
        return GroupAction(self.r, tuple(tuple(i - 1 for i in g) for g in self.group_action))


def _check_length(name: str, values: Sequence[Any] | None, r: int) -> None:
    if values is not None and len(values) != r:
        raise ValueError(f"{name} has length {len(values)}, expected {r} (one entry per node)")


def _from_document(doc: dict[str, Any]) -> Configuration:
    nodes = tuple(doc["nodes"])
    r = len(nodes)
    if len(set(nodes)) != r:
        raise ValueError("node labels must be distinct")
    cycles = []
    for c in doc["cycles"]:
        _check_length(f"incidence_row of {c['label']}", c["incidence_row"], r)
        cycles.append(CycleSpec(c["label"], _vector(c["incidence_row"]), tuple(c.get("admissibility", ()))))
    if len({c.label for c in cycles}) != len(cycles):
        raise ValueError("cycle labels must be distinct")

    vectors = {}
    for key in ("corrected_class", "mhm_class", "realization_diag"):
        raw = doc.get(key)
        _check_length(key, raw, r)
        vectors[key] = None if raw is None else _vector(raw)
    if vectors["realization_diag"] is not None and any(x == 0 for x in vectors["realization_diag"]):
        raise ValueError("realization_diag entries must be nonzero")

    sides = None
    if "sides" in doc:
        sides = {}
        for name in ("res", "sm", "ext"):
            spec = doc["sides"].get(name)
            if spec is None:
                continue
            if "labels" in spec:
                _check_length(f"{name} labels", spec["labels"], r)
                sides[name] = SideSpec(labels=tuple(spec["labels"]))
            else:
                for row in spec["matrix"]:
                    _check_length(f"{name} matrix row", row, r)
                sides[name] = SideSpec(matrix=tuple(_vector(row) for row in spec["matrix"]))

    group = None
    if "group_action" in doc:
        group = tuple(tuple(g) for g in doc["group_action"])
        for g in group:
            if sorted(g) != list(range(1, r + 1)):
                raise ValueError(f"group generator {list(g)} is not a permutation of 1..{r}")

    complement = None
    if "q_geom_complement" in doc:
        for row in doc["q_geom_complement"]:
            _check_length("q_geom_complement row", row, r)
        complement = tuple(_vector(row) for row in doc["q_geom_complement"])

    return Configuration(
        nodes=nodes,
        cycles=tuple(cycles),
        corrected_class=vectors["corrected_class"],
        mhm_class=vectors["mhm_class"],
        realization_diag=vectors["realization_diag"],
        sides=sides,
        group_action=group,
        q_geom_complement=complement,
    )


def parse_config(text: str) -> Configuration:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from exc
    return _from_document(doc)


def to_document(cfg: Configuration) -> dict[str, Any]:
    def vec(v: Sequence[Fraction]) -> list[int | str]:
        return [format_rational(x) for x in v]

    doc: dict[str, Any] = {"nodes": list(cfg.nodes), "cycles": []}
    for c in cfg.cycles:
        entry: dict[str, Any] = {"label": c.label, "incidence_row": vec(c.incidence_row)}
        if c.admissibility:
            entry["admissibility"] = list(c.admissibility)
        doc["cycles"].append(entry)
    for key in ("corrected_class", "mhm_class", "realization_diag"):
        value = getattr(cfg, key)
        if value is not None:
            doc[key] = vec(value)
    if cfg.sides is not None:
        doc["sides"] = {}
        for name in ("res", "sm", "ext"):
            spec = cfg.sides.get(name)
            if spec is None:
                continue
            if spec.labels is not None:
                doc["sides"][name] = {"labels": list(spec.labels)}
            else:
                doc["sides"][name] = {"matrix": [vec(row) for row in spec.matrix]}
    if cfg.group_action is not None:
        doc["group_action"] = [list(g) for g in cfg.group_action]
    if cfg.q_geom_complement is not None:
        doc["q_geom_complement"] = [vec(row) for row in cfg.q_geom_complement]
    return doc


def serialize_config(cfg: Configuration) -> str:
    return json.dumps(to_document(cfg), indent=2) + "\n"


def bundled_names() -> list[str]:
    folder = resources.files("rlk").joinpath("data/examples")
    return sorted(p.name[: -len(".json")] for p in folder.iterdir() if p.name.endswith(".json"))


def load_config(ref: str | Path) -> Configuration:
    """Load a configuration from a path, or a bundled example given as ``@name``."""
    ref = str(ref)
    if ref.startswith("@"):
        name = ref[1:]
        if name not in bundled_names():
            raise FileNotFoundError(f"no bundled example {name!r}; available: {', '.join(bundled_names())}")
        text = resources.files("rlk").joinpath(f"data/examples/{name}.json").read_text(encoding="utf-8")
    else:
        text = Path(ref).read_text(encoding="utf-8")
    return parse_config(text)
