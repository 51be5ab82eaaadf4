#!/usr/bin/env python3
"""Generate the 50-hotel benchmark and its expected results.

Writes the input graph, the three place-source fixtures with documented
injected errors, the manual baseline, a run config, and the expected report
and metrics.  The expectations are computed here with a self-contained
brute-force validator (own normalizer, own edit distance, own haversine,
literal sum/mean formulas) so the package's pipeline is checked against an
independent second implementation, byte for byte.

Error injection plan (hotel index, 0-based):
  0-29   clean; among them:
           0-2   source gamma stores an outdated phone number
           3-4   source beta lacks the address property
           5     the graph carries a second alternative name
           6     source alpha's coordinates drifted ~600 m (outside radius)
  30-34  renamed in the graph (name label false; nothing matches anywhere)
  35-37  near-miss wrong phone in the graph (one digit; label false)
  38-40  completely wrong phone in the graph (label false)
  41-42  near-miss wrong address in the graph (house number; label false)
  43-45  completely wrong address in the graph (label false)
  46-47  present only in source alpha (coverage gap)
  48-49  present in alpha and beta only
"""

import json
import math
import random
import re
import unicodedata
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "hotels"

SOURCES = ["places-alpha", "places-beta", "places-gamma"]
RADIUS_M = 500.0
THRESHOLD = 0.5

KINDS = ["Hotel", "Gasthof", "Pension", "Alpenhotel", "Berghotel"]
MAINS = [
    "Alpenrose", "Edelweiss", "Karwendel", "Grüner Baum", "Tirolerhof",
    "Sonnenspitze", "Zillertal", "Alpenhof", "Römerhof", "Föhrenwald",
]
STREETS = [
    "Dorfstraße", "Hauptstraße", "Kirchweg", "Seepromenade", "Brandbergstraße",
    "Talweg", "Lanersbacher Weg", "Hintertuxer Straße", "Am Marktplatz", "Innrain",
]
TOWNS = [
    ("6290", "Mayrhofen"), ("6293", "Tux"), ("6280", "Zell am Ziller"),
    ("6020", "Innsbruck"), ("6100", "Seefeld"), ("6130", "Schwaz"),
    ("6060", "Hall in Tirol"), ("6370", "Kitzbühel"), ("6500", "Landeck"),
    ("6600", "Reutte"),
]
AREA_CODES = ["5285", "5287", "512", "5242", "5224", "5356", "5446", "5672"]


# --- independent normalizer / similarity / distance --------------------------

EDGE_PUNCT = ".,;:!?\"'`´()[]{}<>*+-/\\|~_#&"


def norm_text(value):
    decomposed = unicodedata.normalize("NFKD", value)
    out = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    out = out.casefold()
    out = " ".join(out.split())
    out = out.strip().strip(EDGE_PUNCT).strip()
    return " ".join(out.split())


def norm_phone(value):
    return re.sub(r"[^0-9]+", "", value).lstrip("0")


def norm(value, kind):
    return norm_phone(value) if kind == "phone" else norm_text(value)


NORMALIZER = {"name": "name", "address": "address", "phone": "phone"}


def edit_distance(a, b):
    rows, cols = len(a) + 1, len(b) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[rows - 1][cols - 1]


def sim(a, b, kind):
    na, nb = norm(a, kind), norm(b, kind)
    if not na and not nb:
        return 1.0
    if not na or not nb:
        return 0.0
    return 1.0 - edit_distance(na, nb) / max(len(na), len(nb))


def haversine(a, b):
    lat1, lon1, lat2, lon2 = map(math.radians, (a[0], a[1], b[0], b[1]))
    h = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * 6_371_000.0 * math.asin(math.sqrt(min(1.0, h)))


# --- dataset construction -----------------------------------------------------


def build_hotels():
    rng = random.Random(202107)
    hotels = []
    for i in range(50):
        name = f"{KINDS[i % 5]} {MAINS[i // 5]}"
        street = STREETS[i % 10]
        number = rng.randint(1, 60)
        plz, town = TOWNS[(i * 3 + 1) % 10]
        address = f"{street} {number}, {plz} {town}"
        phone = f"+43 {AREA_CODES[i % 8]} {rng.randint(20000, 98999)}"
        lat = round(rng.uniform(47.05, 47.45), 5)
        lon = round(rng.uniform(10.95, 12.15), 5)
        hotels.append(
            {"idx": i, "id": f"h{i + 1:02d}", "name": name, "address": address,
             "phone": phone, "lat": lat, "lon": lon}
        )
    return hotels, rng


def jitter(rng, lat, lon, meters):
    bearing = rng.uniform(0, 2 * math.pi)
    dlat = meters * math.cos(bearing) / 111_320.0
    dlon = meters * math.sin(bearing) / (111_320.0 * math.cos(math.radians(lat)))
    return round(lat + dlat, 6), round(lon + dlon, 6)


def corrupt_kg(hotels, rng):
    """Apply the documented graph-side errors; returns baseline truth."""
    truth = {}  # (subject_id, property) -> correct?
    for h in hotels:
        i = h["idx"]
        kg = dict(name=h["name"], address=h["address"], phone=h["phone"])
        labels = dict(name=True, address=True, phone=True)
        if 30 <= i <= 34:
            kg["name"] = f"Betriebsobjekt {i + 1} GmbH"
            labels["name"] = False
        elif 35 <= i <= 37:
            digits = list(h["phone"])
            digits[-3] = str((int(digits[-3]) + 5) % 10)
            kg["phone"] = "".join(digits)
            labels["phone"] = False
        elif 38 <= i <= 40:
            kg["phone"] = f"+43 1 {rng.randint(2000000, 9899999)}"
            labels["phone"] = False
        elif 41 <= i <= 42:
            kg["address"] = re.sub(r" (\d+),", lambda m: f" {int(m.group(1)) + 2},", h["address"], count=1)
            labels["address"] = False
        elif 43 <= i <= 45:
            kg["address"] = f"Postfach {rng.randint(100, 999)}, 1010 Wien"
            labels["address"] = False
        h["kg"] = kg
        h["alt_name"] = f"{kg['name']} {h['address'].rsplit(' ', 1)[-1]}" if i == 5 else None
        for prop in ("name", "address", "phone"):
            truth[(h["id"], prop)] = labels[prop]
    return truth


def presence(i, source):
    if 46 <= i <= 47:
        return source == "places-alpha"
    if 48 <= i <= 49:
        return source in ("places-alpha", "places-beta")
    return True


def fold_ascii(text):
    return "".join(
        ch for ch in unicodedata.normalize("NFKD", text) if not unicodedata.combining(ch)
    )


def build_source_records(hotels, rng):
    """True values, per-source formatting quirks, and source-side noise."""
    records = {s: [] for s in SOURCES}
    for h in hotels:
        i = h["idx"]
        base_geo = (h["lat"], h["lon"])
        phone_digits = h["phone"].removeprefix("+43 ")

        if presence(i, "places-alpha"):
            drift = 600.0 if i == 6 else rng.uniform(3.0, 30.0)
            lat, lon = jitter(rng, *base_geo, drift)
            records["places-alpha"].append(
                {"id": f"ga-{i + 1:04d}", "name": h["name"], "lat": lat, "lon": lon,
                 "properties": {"address": [h["address"]], "phone": [h["phone"]]}}
            )
        if presence(i, "places-beta"):
            lat, lon = jitter(rng, *base_geo, rng.uniform(3.0, 30.0))
            props = {"telephone": [f"0043 {phone_digits}"]}
            if i not in (3, 4):
                props["street_address"] = [h["address"]]
            records["places-beta"].append(
                {"id": f"ob-{i + 1:04d}", "name": fold_ascii(h["name"]), "lat": lat, "lon": lon,
                 "properties": props}
            )
        if presence(i, "places-gamma"):
            lat, lon = jitter(rng, *base_geo, rng.uniform(3.0, 30.0))
            phone = f"+43-{phone_digits.replace(' ', '-')}"
            if i in (0, 1, 2):  # outdated number
                phone = f"+43 {AREA_CODES[(i + 3) % 8]} {rng.randint(20000, 98999)}"
            records["places-gamma"].append(
                {"id": f"yp-{i + 1:04d}", "name": h["name"].upper(), "lat": lat, "lon": lon,
                 "properties": {"phone_number": [phone], "address": [h["address"]]}}
            )
    return records


ALIASES = {
    "kg": {"telephone": "phone"},
    "places-beta": {"street_address": "address", "telephone": "phone"},
    "places-gamma": {"phone_number": "phone"},
}


def apply_aliases(props, source):
    amap = ALIASES.get(source, {})
    out = {}
    for key, values in props.items():
        target = amap.get(key, key)
        if target not in ("name", "address", "phone", "geo"):
            continue
        bucket = out.setdefault(target, [])
        for v in values:
            if v not in bucket:
                bucket.append(v)
    return out


# --- the independent brute-force validator ------------------------------------


def brute_force_validate(hotels, records):
    weights = [1.0, 1.0, 1.0]
    w_sum = sum(weights)
    by_source = {}
    for source in SOURCES:
        mapped = []
        for rec in records[source]:
            mapped.append(
                {"id": rec["id"], "name": rec["name"], "geo": (rec["lat"], rec["lon"]),
                 "props": apply_aliases(rec["properties"], source)}
            )
        by_source[source] = mapped

    instances_out = []
    for h in sorted(hotels, key=lambda x: f"http://example.org/kg/hotel/{x['id']}"):
        subject = f"http://example.org/kg/hotel/{h['id']}"
        kg_values = {
            "name": [h["kg"]["name"]] + ([h["alt_name"]] if h["alt_name"] else []),
            "address": [h["kg"]["address"]],
            "phone": [h["kg"]["phone"]],
        }
        query_name = norm_text(kg_values["name"][0])
        query_geo = (h["lat"], h["lon"])

        matches = {}
        for source in SOURCES:
            candidates = [
                (haversine(query_geo, rec["geo"]), rec["id"], rec)
                for rec in by_source[source]
                if norm_text(rec["name"]) == query_name
                and haversine(query_geo, rec["geo"]) <= RADIUS_M
            ]
            candidates.sort(key=lambda c: (c[0], c[1]))
            matches[source] = candidates[0][2] if candidates else None

        triples = []
        for prop in ("name", "address", "phone"):
            per_source = []
            unweighted = 0.0
            weighted_num = 0.0
            for source, weight in zip(SOURCES, weights):
                rec = matches[source]
                if rec is None:
                    entry = {"sourceId": source, "value": None, "sim": 0.0,
                             "matched": False, "error": None}
                else:
                    values = rec["props"].get(prop, [rec["name"]] if prop == "name" else [])
                    if values:
                        best, best_value = 0.0, None
                        for sv in values:
                            for kv in kg_values[prop]:
                                s = sim(kv, sv, NORMALIZER[prop])
                                if best_value is None or s > best:
                                    best, best_value = s, sv
                        entry = {"sourceId": source, "value": best_value, "sim": best,
                                 "matched": True, "error": None}
                    else:
                        entry = {"sourceId": source, "value": None, "sim": 0.0,
                                 "matched": True, "error": None}
                unweighted += entry["sim"]
                weighted_num += entry["sim"] * weight
                per_source.append(entry)
            triples.append(
                {"property": prop, "kgValue": kg_values[prop][0], "perSource": per_source,
                 "unweighted": unweighted, "weighted": weighted_num / w_sum}
            )

        confidence = 0.0
        for t in triples:
            confidence += t["weighted"]
        confidence /= len(triples)
        instances_out.append(
            {"subject": subject, "confidence": confidence, "valid": confidence > THRESHOLD,
             "threshold": THRESHOLD, "matchErrors": {}, "triples": triples}
        )
    return instances_out


def brute_force_metrics(instances, truth):
    per_property = {}
    overall = []
    confirmed = {s: 0 for s in SOURCES}
    correct_total = 0
    for inst in instances:
        hid = inst["subject"].rsplit("/", 1)[-1]
        for t in inst["triples"]:
            correct = truth[(hid, t["property"])]
            predicted = t["weighted"] > THRESHOLD
            cell = ("TP" if correct else "FP") if predicted else ("FN" if correct else "TN")
            overall.append(cell)
            per_property.setdefault(t["property"], []).append(cell)
            if correct:
                correct_total += 1
                for entry in t["perSource"]:
                    if entry["sim"] > THRESHOLD:
                        confirmed[entry["sourceId"]] += 1

    def counts(cells):
        tp = cells.count("TP")
        fp = cells.count("FP")
        tn = cells.count("TN")
        fn = cells.count("FN")
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return {"tp": tp, "fp": fp, "tn": tn, "fn": fn,
                "precision": precision, "recall": recall, "f1": f1}

    agree = 0
    for inst in instances:
        hid = inst["subject"].rsplit("/", 1)[-1]
        truly_valid = all(truth[(hid, t["property"])] for t in inst["triples"])
        if inst["valid"] == truly_valid:
            agree += 1

    return {
        "overall": counts(overall),
        "perProperty": {p: counts(cells) for p, cells in sorted(per_property.items())},
        "recallBySource": {s: confirmed[s] / correct_total for s in sorted(confirmed)},
        "instanceAccuracy": agree / len(instances),
        "labeledTriples": len(overall),
    }


# --- expected canonical report --------------------------------------------------


def round_tree(node):
    if isinstance(node, float):
        return round(node, 4)
    if isinstance(node, dict):
        return {k: round_tree(v) for k, v in node.items()}
    if isinstance(node, list):
        return [round_tree(v) for v in node]
    return node


def expected_report(instances, metrics):
    return {
        "config": {
            "input": {"kind": "turtle", "file": "hotels.ttl"},
            "domainSpec": {
                "name": "hotel",
                "targetType": "Hotel",
                "properties": ["name", "address", "phone", "geo"],
                "matchingProperties": ["name", "geo"],
            },
            "sources": SOURCES,
            "weights": None,
            "normalizedWeights": [round(1 / 3, 4)] * 3,
            "threshold": THRESHOLD,
            "radiusM": RADIUS_M,
            "similarity": {
                "address": {"kind": "levenshtein-normalized", "normalizer": "address"},
                "name": {"kind": "levenshtein-normalized", "normalizer": "name"},
                "phone": {"kind": "levenshtein-normalized", "normalizer": "phone"},
            },
        },
        "instances": round_tree(instances),
        "skipped": [],
        "metrics": round_tree(metrics),
        "sourceErrors": {},
    }


# --- file writers ----------------------------------------------------------------


def ttl_escape(value):
    return value.replace("\\", "\\\\").replace('"', '\\"')


def write_turtle(hotels, path):
    lines = [
        "@prefix s: <http://schema.org/> .",
        "@prefix h: <http://example.org/kg/hotel/> .",
        "",
    ]
    for h in hotels:
        names = " , ".join(f'"{ttl_escape(n)}"' for n in [h["kg"]["name"]] + ([h["alt_name"]] if h["alt_name"] else []))
        lines.append(f"h:{h['id']} a s:Hotel ;")
        lines.append(f"    s:name {names} ;")
        lines.append(f"    s:address \"{ttl_escape(h['kg']['address'])}\" ;")
        lines.append(f"    s:telephone \"{ttl_escape(h['kg']['phone'])}\" ;")
        lines.append(f"    s:latitude {h['lat']} ;")
        lines.append(f"    s:longitude {h['lon']} .")
        lines.append("")
    path.write_text("\n".join(lines), encoding="utf-8")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    hotels, rng = build_hotels()
    truth = corrupt_kg(hotels, rng)
    records = build_source_records(hotels, rng)

    # sanity guards: near-misses must stay above the threshold, far misses below
    for h in hotels:
        i = h["idx"]
        if 35 <= i <= 37:
            assert sim(h["kg"]["phone"], h["phone"], "phone") > THRESHOLD
        if 38 <= i <= 40:
            assert sim(h["kg"]["phone"], h["phone"], "phone") < THRESHOLD
        if 41 <= i <= 42:
            assert sim(h["kg"]["address"], h["address"], "address") > THRESHOLD
        if 43 <= i <= 45:
            assert sim(h["kg"]["address"], h["address"], "address") < THRESHOLD
    assert len({norm_text(h["name"]) for h in hotels}) == 50

    write_turtle(hotels, OUT_DIR / "hotels.ttl")

    ds = {
        "name": "hotel",
        "targetType": "Hotel",
        "properties": ["name", "address", "phone", "geo"],
        "matchingProperties": ["name", "geo"],
        "aliases": ALIASES,
    }
    (OUT_DIR / "hotel.ds.json").write_text(json.dumps(ds, indent=2, ensure_ascii=False) + "\n", "utf-8")

    for source in SOURCES:
        doc = {"sourceId": source, "records": records[source]}
        (OUT_DIR / f"{source}.json").write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", "utf-8")

    baseline_lines = ["subject,property,correct"]
    for h in hotels:
        for prop in ("name", "address", "phone"):
            subject = f"http://example.org/kg/hotel/{h['id']}"
            baseline_lines.append(f"{subject},{prop},{str(truth[(h['id'], prop)]).lower()}")
    (OUT_DIR / "baseline.csv").write_text("\n".join(baseline_lines) + "\n", "utf-8")

    run = {
        "input": {"turtle": "hotels.ttl"},
        "domainSpec": "hotel.ds.json",
        "sources": [
            {"sourceId": source, "kind": "fixture", "endpoint": f"{source}.json"}
            for source in SOURCES
        ],
        "threshold": THRESHOLD,
        "radiusM": RADIUS_M,
        "baseline": "baseline.csv",
    }
    (OUT_DIR / "run.json").write_text(json.dumps(run, indent=2, ensure_ascii=False) + "\n", "utf-8")

    instances = brute_force_validate(hotels, records)
    metrics = brute_force_metrics(instances, truth)
    report = expected_report(instances, metrics)
    (OUT_DIR / "expected_report.json").write_text(
        json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )
    (OUT_DIR / "expected_metrics.json").write_text(
        json.dumps(metrics, sort_keys=True, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )

    for prop in ("name", "address", "phone"):
        f1 = metrics["perProperty"][prop]["f1"]
        print(f"{prop}: precision={metrics['perProperty'][prop]['precision']:.4f} "
              f"recall={metrics['perProperty'][prop]['recall']:.4f} f1={f1:.4f}")
        assert f1 >= 0.75, f"benchmark construction broke the f1 floor for {prop}"
    print(f"overall f1={metrics['overall']['f1']:.4f}, recallBySource={ {k: round(v, 4) for k, v in metrics['recallBySource'].items()} }")


if __name__ == "__main__":
    main()
