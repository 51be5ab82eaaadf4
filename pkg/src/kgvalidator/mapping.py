"""Projection of a knowledge graph onto a domain specification.

Properties are matched by the local name of the predicate, which is the
common attribute space shared with the external sources.  The input graph
itself may need renaming onto that space too; an alias map under the
reserved source id "kg" covers that (e.g. telephone -> phone).  Geo
coordinates are read either from flat latitude/longitude properties or from
a one-level nested node referenced by a 'geo' property.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Optional

from .model import (
    GEO_PROPERTY,
    RDF_TYPE,
    DomainSpecification,
    Geo,
    Instance,
    Iri,
    KnowledgeGraph,
    Triple,
)

SKIP_REASON_NO_MATCHING = "insufficient matching properties"

#: Alias-map key for renaming the input graph's own properties.
KG_SOURCE_ID = "kg"

_LAT_NAMES = ("latitude", "lat")
_LON_NAMES = ("longitude", "lon", "lng")


def apply_aliases(
    raw: dict[str, list[str]], source_id: str, ds: DomainSpecification
) -> dict[str, list[str]]:
    """Rename source-specific property keys to canonical DS names.

    Keys that are neither aliases nor DS properties are dropped.  When both
    an alias and its canonical property occur, their values are merged in
    canonical-first order.
    """
    alias_map = ds.alias_map(source_id)
    known = set(ds.properties) | {GEO_PROPERTY}
    out: dict[str, list[str]] = {}
    for key, values in raw.items():
        target = alias_map.get(key, key)
        if target not in known:
            continue
        bucket = out.setdefault(target, [])
        for value in values:
            if value not in bucket:
                bucket.append(value)
    return out


def _parse_coord(value: str) -> Optional[float]:
    try:
        return float(value)
    except ValueError:
        return None


def _geo_from_values(lat_values: list[str], lon_values: list[str]) -> Optional[Geo]:
    if not lat_values or not lon_values:
        return None
    lat = _parse_coord(lat_values[0])
    lon = _parse_coord(lon_values[0])
    if lat is None or lon is None:
        return None
    if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
        return None
    return Geo(lat, lon)


def extract_instances(
    kg: KnowledgeGraph, ds: DomainSpecification
) -> tuple[list[Instance], list[tuple[str, str]]]:
    """Project the graph onto the DS.

    Returns the instances of the target type, ordered by subject IRI, plus
    the excluded subjects: those of the right type that populate none of the
    matching properties, reported as (subject, reason).
    """
    by_subject: dict[Iri, list[Triple]] = defaultdict(list)
    for t in kg.triples:
        by_subject[t.subject].append(t)

    instances: list[Instance] = []
    excluded: list[tuple[str, str]] = []

    for subject in sorted(by_subject, key=lambda iri: iri.value):
        triples = by_subject[subject]
        type_names = {
            t.object.local_name
            for t in triples
            if t.predicate.value == RDF_TYPE and isinstance(t.object, Iri)
        }
        if ds.target_type not in type_names:
            continue

        raw: dict[str, list[str]] = {}
        lat_values: list[str] = []
        lon_values: list[str] = []
        geo_nodes: list[Iri] = []
        for t in triples:
            if t.predicate.value == RDF_TYPE:
                continue
            local = t.predicate.local_name
            if local in _LAT_NAMES:
                lat_values.append(t.object_str)
            elif local in _LON_NAMES:
                lon_values.append(t.object_str)
            elif local == GEO_PROPERTY and isinstance(t.object, Iri):
                geo_nodes.append(t.object)
            else:
                value = t.object_str.strip()
                if value:
                    raw.setdefault(local, [])
                    if value not in raw[local]:
                        raw[local].append(value)

        mapped = apply_aliases(raw, KG_SOURCE_ID, ds)
        attributes = {p: mapped[p] for p in ds.attribute_properties if mapped.get(p)}

        geo = _geo_from_values(lat_values, lon_values)
        if geo is None:
            for node in geo_nodes:
                node_lat = [
                    t.object_str for t in by_subject.get(node, []) if t.predicate.local_name in _LAT_NAMES
                ]
                node_lon = [
                    t.object_str for t in by_subject.get(node, []) if t.predicate.local_name in _LON_NAMES
                ]
                geo = _geo_from_values(node_lat, node_lon)
                if geo is not None:
                    break

        instance = Instance(id=subject, type=ds.target_type, attributes=attributes, geo=geo)
        if populated_matching_count(instance, ds) == 0:
            excluded.append((subject.value, SKIP_REASON_NO_MATCHING))
            continue
        instances.append(instance)

    return instances, excluded


def populated_matching_count(instance: Instance, ds: DomainSpecification) -> int:
    """How many of the DS matching properties this instance populates."""
    count = 0
    for prop in ds.matching_properties:
        if prop == GEO_PROPERTY:
            count += instance.geo is not None
        else:
            count += bool(instance.attributes.get(prop))
    return count
