"""Comparison of validator output against human-judged baseline labels."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .confidence import DEFAULT_THRESHOLD, InstanceScore, TripleScore
from .errors import EmptyEvaluationError, MissingLabelError, ValidatorError


class Classification(str, Enum):
    TP = "TP"
    FP = "FP"
    TN = "TN"
    FN = "FN"


@dataclass(frozen=True)
class BaselineLabel:
    subject: str
    property: str
    correct: bool


#: Baseline labels keyed by (subject, property).
LabelMap = dict[tuple[str, str], bool]


def load_baseline(path: Union[str, Path]) -> LabelMap:
    """Read a baseline CSV: header `subject,property,correct`, one row per triple."""
    path = Path(path)
    labels: LabelMap = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"subject", "property", "correct"}
        if reader.fieldnames is None or not required.issubset(set(reader.fieldnames)):
            raise ValidatorError(f"{path}: baseline CSV must have header subject,property,correct")
        for row in reader:
            key = (row["subject"], row["property"])
            if key in labels:
                raise ValidatorError(f"{path}: duplicate baseline label for {key}")
            value = row["correct"].strip().lower()
            if value not in ("true", "false"):
                raise ValidatorError(f"{path}: correct must be true or false, got {row['correct']!r}")
            labels[key] = value == "true"
    return labels


def classify_triple(
    score: TripleScore,
    label: Optional[BaselineLabel],
    triple_threshold: float = DEFAULT_THRESHOLD,
) -> Classification:
    """Confusion-matrix cell for one scored triple against its label.

    The validator predicts "correct" when the weighted confidence strictly
    exceeds the threshold.
    """
    if label is None:
        raise MissingLabelError(score.subject, score.property)
    predicted = score.weighted > triple_threshold
    if predicted:
        return Classification.TP if label.correct else Classification.FP
    return Classification.FN if label.correct else Classification.TN


@dataclass(frozen=True)
class EvalMetrics:
    tp: int
    fp: int
    tn: int
    fn: int
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def metrics(classifications: Sequence[Classification]) -> EvalMetrics:
    """Counts plus precision/recall/f1; zero denominators yield 0."""
    if not classifications:
        raise EmptyEvaluationError("no classifications to aggregate")
    tp = sum(1 for c in classifications if c is Classification.TP)
    fp = sum(1 for c in classifications if c is Classification.FP)
    tn = sum(1 for c in classifications if c is Classification.TN)
    fn = sum(1 for c in classifications if c is Classification.FN)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalMetrics(tp=tp, fp=fp, tn=tn, fn=fn, precision=precision, recall=recall, f1=f1)


def _labeled_triples(
    instances: Iterable[InstanceScore], labels: LabelMap
) -> Iterable[tuple[TripleScore, BaselineLabel]]:
    for instance in instances:
        for triple in instance.triples:
            key = (triple.subject, triple.property)
            if key in labels:
                yield triple, BaselineLabel(triple.subject, triple.property, labels[key])


def evaluate_instances(
    instances: Sequence[InstanceScore],
    labels: LabelMap,
    triple_threshold: float = DEFAULT_THRESHOLD,
) -> dict:
    """Per-property and overall metrics over all labeled triples.

    Also reports per-source recall and instance-level accuracy (an instance
    counts as truly valid when all its labeled triples are correct).
    """
    per_property: dict[str, list[Classification]] = {}
    overall: list[Classification] = []
    for triple, label in _labeled_triples(instances, labels):
        cell = classify_triple(triple, label, triple_threshold)
        overall.append(cell)
        per_property.setdefault(triple.property, []).append(cell)
    if not overall:
        raise EmptyEvaluationError("baseline labels matched no scored triples")

    instance_total = 0
    instance_agree = 0
    for instance in instances:
        keys = [(t.subject, t.property) for t in instance.triples if (t.subject, t.property) in labels]
        if not keys:
            continue
        instance_total += 1
        truly_valid = all(labels[k] for k in keys)
        if instance.valid == truly_valid:
            instance_agree += 1

    return {
        "overall": metrics(overall).to_dict(),
        "perProperty": {p: metrics(cells).to_dict() for p, cells in sorted(per_property.items())},
        "recallBySource": recall_by_source(instances, labels, triple_threshold),
        "instanceAccuracy": instance_agree / instance_total if instance_total else 0.0,
        "labeledTriples": len(overall),
    }


def recall_by_source(
    instances: Sequence[InstanceScore],
    labels: LabelMap,
    triple_threshold: float = DEFAULT_THRESHOLD,
) -> dict[str, float]:
    """Recall per source, treating each source's evidence alone as predictor.

    A source predicts a triple correct when its recorded similarity strictly
    exceeds the threshold; recall is measured over the labeled-correct
    triples.
    """
    confirmed: dict[str, int] = {}
    correct_total = 0
    for triple, label in _labeled_triples(instances, labels):
        if not label.correct:
            continue
        correct_total += 1
        for evidence in triple.per_source:
            confirmed.setdefault(evidence.source_id, 0)
            if evidence.sim > triple_threshold:
                confirmed[evidence.source_id] += 1
    if correct_total == 0:
        return {source: 0.0 for source in confirmed}
    return {source: count / correct_total for source, count in sorted(confirmed.items())}


def write_metrics_csv(evaluation: dict, path: Union[str, Path]):
    """Standalone per-property metrics file: property,precision,recall,f1."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["property", "precision", "recall", "f1"])
        for prop, m in evaluation["perProperty"].items():
            writer.writerow([prop, f"{m['precision']:.4f}", f"{m['recall']:.4f}", f"{m['f1']:.4f}"])
        overall = evaluation["overall"]
        writer.writerow(
            ["__overall__", f"{overall['precision']:.4f}", f"{overall['recall']:.4f}", f"{overall['f1']:.4f}"]
        )
