"""JSON file formats for instances and clusterings.

Instance files: {"n": int, "colors": "RBRB...", "p": int, "q": int}.
Clustering files: {"labels": [int, ...]}, normalized on load.
Serialization is canonical (sorted keys, two-space indent, trailing
newline) so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError, SizeMismatch
from .model import Clustering, ColoredInstance, normalize


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return doc


def load_instance(path) -> ColoredInstance:
    doc = _load_json(path)
    try:
        n, colors, p, q = doc["n"], doc["colors"], doc["p"], doc["q"]
    except KeyError as exc:
        raise ParseError(f"{path}: missing field {exc}") from exc
    if not isinstance(colors, str) or len(colors) != n:
        raise ParseError(f"{path}: colors string must have length n = {n}")
    if any(c not in "RB" for c in colors):
        raise ParseError(f"{path}: colors must be 'R' or 'B'")
    if not (isinstance(p, int) and isinstance(q, int) and p >= 1 and q >= 1):
        raise ParseError(f"{path}: p and q must be positive integers")
    return ColoredInstance.from_colors(colors, p, q)


def save_instance(instance: ColoredInstance, path) -> None:
    doc = {
        "n": instance.n,
        "colors": "".join(c.value for c in instance.colors),
        "p": instance.given_p,
        "q": instance.given_q,
    }
    Path(path).write_text(_dumps(doc), encoding="utf-8")


def load_clustering(path, n: int | None = None) -> Clustering:
    doc = _load_json(path)
    try:
        labels = doc["labels"]
    except KeyError as exc:
        raise ParseError(f"{path}: missing field {exc}") from exc
    if not isinstance(labels, list) or any(not isinstance(x, int) for x in labels):
        raise ParseError(f"{path}: labels must be a list of integers")
    if n is not None and len(labels) != n:
        raise SizeMismatch(f"{path}: {len(labels)} labels for an instance of {n} points")
    return normalize(labels)


def save_clustering(clustering: Clustering, path) -> None:
    Path(path).write_text(_dumps({"labels": list(clustering.labels)}), encoding="utf-8")


def save_report(report: dict, path) -> None:
    Path(path).write_text(_dumps(report), encoding="utf-8")
