#!/usr/bin/env python3
"""Generate the 2530-politician scalability benchmark.

Two local person sources with known coverage stand in for live encyclopedic
endpoints: source biodb-a holds 1240 of the 2530 people and biodb-b holds
911, with exact name and birth-year values, so the per-source recalls are
fixed by construction at 2480/5060 (~0.4901) and 1822/5060 (~0.3601).  All
graph triples are correct; the baseline marks every one of them true.
"""

import json
import random
import unicodedata
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "politicians"

COUNT = 2530
A_PRESENT = 1240
B_PRESENT = 911

FIRST = [
    "Adela", "Alois", "Amara", "André", "Anika", "Antal", "Beata", "Bela", "Boris",
    "Carla", "Celia", "Dariusz", "Dieter", "Edda", "Elif", "Emil", "Farid", "Gavril",
    "Gerda", "Hanna", "Henrik", "Ilona", "Ivo", "Jana", "Jens", "Katrin", "Kenji",
    "Lajos", "Lea", "Lennart", "Lucia", "Magda", "Marek", "Mira", "Nadia", "Niko",
    "Olga", "Oskar", "Paula", "Radek", "Rosa", "Samuel", "Silvia", "Tamas", "Teresa",
    "Ulrich", "Vera", "Viktor", "Wanda", "Xenia", "Yusuf", "Zora", "Ágnes", "Émile", "Ôzge",
]
LAST = [
    "Achleitner", "Bergmann", "Csonka", "Dvorak", "Eberharter", "Falkner", "Gasser",
    "Hofmann", "Illés", "Jannach", "Kalser", "Lechner", "Moser", "Nagy", "Oberhauser",
    "Pichler", "Quester", "Rainer", "Sailer", "Tischler", "Unterberger", "Vogler",
    "Wibmer", "Xantner", "Ybbser", "Zangerl", "Ambrosi", "Brandstätter", "Czerny",
    "Drexel", "Egger", "Fuchs", "Gruber", "Haas", "Innerhofer", "Jelinek", "Kofler",
    "Lindner", "Mair", "Neumann", "Ortner", "Payr", "Rieder", "Steiner", "Told", "Urban",
]


def fullname_pool():
    names = [f"{f} {l}" for f in FIRST for l in LAST]
    assert len(names) == COUNT, len(names)
    return names


def norm_name(value):
    out = "".join(
        ch for ch in unicodedata.normalize("NFKD", value) if not unicodedata.combining(ch)
    )
    return " ".join(out.casefold().split())


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    rng = random.Random(19540612)
    names = fullname_pool()
    assert len({norm_name(n) for n in names}) == COUNT

    people = []
    for i, name in enumerate(names):
        people.append(
            {
                "id": f"p{i + 1:04d}",
                "name": name,
                "year": rng.randint(1720, 1985),
                "month": rng.randint(1, 12),
                "day": rng.randint(1, 28),
            }
        )

    in_a = set(rng.sample(range(COUNT), A_PRESENT))
    in_b = set(rng.sample(range(COUNT), B_PRESENT))

    # graph
    lines = [
        "@prefix s: <http://schema.org/> .",
        "@prefix v: <http://example.org/vocab/> .",
        "@prefix p: <http://example.org/kg/person/> .",
        "",
    ]
    for person in people:
        lines.append(
            f"p:{person['id']} a s:Person ; s:name \"{person['name']}\" ; "
            f"v:birthYear \"{person['year']}\" ."
        )
    (OUT_DIR / "politicians.ttl").write_text("\n".join(lines) + "\n", "utf-8")

    # sources
    recs_a = [
        {"id": f"wa-{i + 1:05d}", "name": people[i]["name"],
         "properties": {"birthYear": [str(people[i]["year"])]}}
        for i in sorted(in_a)
    ]
    recs_b = [
        {"id": f"db-{i + 1:05d}", "name": people[i]["name"],
         "properties": {"birthDate": [f"{people[i]['year']}-{people[i]['month']:02d}-{people[i]['day']:02d}"]}}
        for i in sorted(in_b)
    ]
    (OUT_DIR / "biodb-a.json").write_text(
        json.dumps({"sourceId": "biodb-a", "records": recs_a}, ensure_ascii=False) + "\n", "utf-8"
    )
    (OUT_DIR / "biodb-b.json").write_text(
        json.dumps({"sourceId": "biodb-b", "records": recs_b}, ensure_ascii=False) + "\n", "utf-8"
    )

    ds = {
        "name": "politician",
        "targetType": "Person",
        "properties": ["name", "birthYear"],
        "matchingProperties": ["name", "birthYear"],
        "aliases": {"biodb-b": {"birthDate": "birthYear"}},
    }
    (OUT_DIR / "person.ds.json").write_text(json.dumps(ds, indent=2) + "\n", "utf-8")

    baseline = ["subject,property,correct"]
    for person in people:
        subject = f"http://example.org/kg/person/{person['id']}"
        baseline.append(f"{subject},name,true")
        baseline.append(f"{subject},birthYear,true")
    (OUT_DIR / "baseline.csv").write_text("\n".join(baseline) + "\n", "utf-8")

    run = {
        "input": {"turtle": "politicians.ttl"},
        "domainSpec": "person.ds.json",
        "sources": [
            {"sourceId": "biodb-a", "kind": "fixture", "endpoint": "biodb-a.json"},
            {"sourceId": "biodb-b", "kind": "fixture", "endpoint": "biodb-b.json"},
        ],
        "threshold": 0.5,
        "similarity": {
            "name": {"kind": "levenshtein-normalized", "normalizer": "name"},
            "birthYear": {"kind": "exact", "normalizer": "year"},
        },
        "baseline": "baseline.csv",
    }
    (OUT_DIR / "run.json").write_text(json.dumps(run, indent=2) + "\n", "utf-8")

    labeled = 2 * COUNT
    expected = {
        "instances": COUNT,
        "labeledTriples": labeled,
        "recallBySource": {
            "biodb-a": (2 * A_PRESENT) / labeled,
            "biodb-b": (2 * B_PRESENT) / labeled,
        },
    }
    (OUT_DIR / "expected.json").write_text(json.dumps(expected, indent=2) + "\n", "utf-8")
    print(f"{COUNT} people; recalls "
          f"a={expected['recallBySource']['biodb-a']:.4f} b={expected['recallBySource']['biodb-b']:.4f}")


if __name__ == "__main__":
    main()
