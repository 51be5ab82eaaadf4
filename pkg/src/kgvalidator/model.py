"""Core data model: IRIs, triples, knowledge graphs, instances, domain specs.

The validator compares graphs from heterogeneous sources, so properties are
addressed by their local name (the part after the last '#' or '/'), which is
what a domain specification lists.  "geo" is a reserved property name: it
refers to an instance's coordinates, may appear in ``matching_properties``,
and never counts as part of the attribute space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Union

from .errors import DomainSpecError

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

GEO_PROPERTY = "geo"


@dataclass(frozen=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if "://" not in self.value:
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return self.value

    @property
    def local_name(self) -> str:
        """The fragment after '#' if present, else after the last '/'."""
        v = self.value
        if "#" in v:
            return v.rsplit("#", 1)[1]
        return v.rstrip("/").rsplit("/", 1)[1]


#: A triple object is either an IRI or a plain literal string.
TripleObject = Union[Iri, str]


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: TripleObject

    def __post_init__(self):
        if isinstance(self.object, str) and not self.object:
            raise ValueError("triple object literal must be non-empty")

    @property
    def object_str(self) -> str:
        return self.object.value if isinstance(self.object, Iri) else self.object


@dataclass(frozen=True)
class KnowledgeGraph:
    """An immutable, duplicate-free set of triples in load order."""

    triples: tuple[Triple, ...]
    origin: str  # "turtle-file" | "sparql-endpoint"

    @classmethod
    def from_triples(cls, triples: Iterable[Triple], origin: str) -> "KnowledgeGraph":
        seen: set[Triple] = set()
        kept: list[Triple] = []
        for t in triples:
            if t not in seen:
                seen.add(t)
                kept.append(t)
        return cls(triples=tuple(kept), origin=origin)

    def __len__(self) -> int:
        return len(self.triples)

    def subjects(self) -> list[Iri]:
        """Distinct subjects in first-appearance order."""
        seen: set[Iri] = set()
        out: list[Iri] = []
        for t in self.triples:
            if t.subject not in seen:
                seen.add(t.subject)
                out.append(t.subject)
        return out


class Geo(NamedTuple):
    lat: float
    lon: float


@dataclass(frozen=True)
class Instance:
    """A subject entity projected onto a domain specification.

    attributes maps a DS property name to the non-empty values found in the
    graph; properties without values are absent from the map, so the size of
    the attribute space is simply ``len(attributes)``.
    """

    id: Iri
    type: str
    attributes: dict[str, list[str]]
    geo: Optional[Geo] = None

    @property
    def attribute_count(self) -> int:
        return len(self.attributes)

    def first_value(self, prop: str) -> Optional[str]:
        values = self.attributes.get(prop)
        return values[0] if values else None


@dataclass(frozen=True)
class DomainSpecification:
    """Target type, validated properties, and per-source property aliases."""

    name: str
    target_type: str
    properties: list[str]
    matching_properties: list[str]
    aliases: dict[str, dict[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.name or not self.target_type:
            raise DomainSpecError("domain spec needs a name and a targetType")
        if not self.properties:
            raise DomainSpecError("domain spec needs at least one property")
        if len(set(self.properties)) != len(self.properties):
            raise DomainSpecError("duplicate property names")
        missing = [p for p in self.matching_properties if p not in self.properties]
        if missing:
            raise DomainSpecError(f"matching properties not in properties: {missing}")
        if len(self.matching_properties) < 2:
            raise DomainSpecError("at least two matching properties are required")
        if "name" not in self.matching_properties:
            raise DomainSpecError(
                "'name' must be a matching property; source lookups are name-anchored"
            )
        for source_id, alias_map in self.aliases.items():
            targets = list(alias_map.values())
            if len(set(targets)) != len(targets):
                raise DomainSpecError(f"alias map for {source_id!r} is not injective")
            for alias, target in alias_map.items():
                if target not in self.properties and target != GEO_PROPERTY:
                    raise DomainSpecError(
                        f"alias {alias!r} for {source_id!r} maps to unknown property {target!r}"
                    )
                if alias in self.properties and alias != target:
                    # Renaming one canonical property onto another would make
                    # alias application non-idempotent.
                    raise DomainSpecError(
                        f"alias {alias!r} for {source_id!r} shadows a canonical property"
                    )

    @property
    def attribute_properties(self) -> list[str]:
        """Properties that carry comparable values, i.e. everything but geo."""
        return [p for p in self.properties if p != GEO_PROPERTY]

    def alias_map(self, source_id: str) -> dict[str, str]:
        return self.aliases.get(source_id, {})

    @classmethod
    def from_dict(cls, doc: dict) -> "DomainSpecification":
        try:
            return cls(
                name=doc["name"],
                target_type=doc["targetType"],
                properties=list(doc["properties"]),
                matching_properties=list(doc["matchingProperties"]),
                aliases={
                    str(sid): {str(a): str(p) for a, p in amap.items()}
                    for sid, amap in doc.get("aliases", {}).items()
                },
            )
        except KeyError as exc:
            raise DomainSpecError(f"missing domain spec field: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "targetType": self.target_type,
            "properties": list(self.properties),
            "matchingProperties": list(self.matching_properties),
            "aliases": {s: dict(m) for s, m in self.aliases.items()},
        }


def load_domain_spec(path: Union[str, Path]) -> DomainSpecification:
    """Load a domain specification from a JSON file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainSpecError(f"cannot read domain spec {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise DomainSpecError(f"domain spec {path} must be a JSON object")
    return DomainSpecification.from_dict(doc)
