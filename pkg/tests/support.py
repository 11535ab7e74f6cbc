"""Shared helpers for the test suite."""

from __future__ import annotations

from itertools import combinations

from fairmerge import Color, ColoredInstance, dist_fast
from fairmerge.model import Clustering
from fairmerge.transcript import Transcript


def audit_transcript(
    before: Clustering, after: Clustering, transcript: Transcript
) -> int:
    """Check cost bookkeeping three ways; return the measured distance.

    The recorded total, the naive replay total, and a direct distance
    computation must all agree, and replay must rebuild the output.
    """
    d = dist_fast(before, after)
    assert transcript.total_cost == d, (transcript.total_cost, d)
    replayed, replay_cost = transcript.replay(before)
    assert replayed.labels == after.labels
    assert replay_cost == d, (replay_cost, d)
    return d


def assert_subset_identities(transcript: Transcript, p: int, q: int) -> None:
    """Every block-cutting loop must cut exactly (total deficit / modulus) blocks."""
    meta = transcript.meta
    for prefix, modulus in (("merge", p), ("blue_merge", p), ("red_merge", q)):
        w = meta.get(f"{prefix}_w")
        if w is not None:
            assert meta[f"{prefix}_subsets_cut"] * modulus == w, meta


def swap_colors(instance: ColoredInstance) -> ColoredInstance:
    """Flip every point's color and the declared ratio."""
    flipped = [Color.RED if c is Color.BLUE else Color.BLUE for c in instance.colors]
    return ColoredInstance.from_colors(flipped, instance.given_q, instance.given_p)


def mono_instance(red_sizes, blue_sizes, p: int = 1, q: int = 1):
    """Instance whose clusters are monochromatic blocks of the given sizes."""
    colors: list[str] = []
    labels: list[int] = []
    lab = 0
    for size in red_sizes:
        colors += ["R"] * size
        labels += [lab] * size
        lab += 1
    for size in blue_sizes:
        colors += ["B"] * size
        labels += [lab] * size
        lab += 1
    from fairmerge import normalize

    inst = ColoredInstance.from_colors(colors, p, q)
    return inst, normalize(labels, inst.n)


def counts_instance(cluster_counts, p: int, q: int):
    """Instance from (blue_count, red_count) pairs, one cluster per pair."""
    colors: list[str] = []
    labels: list[int] = []
    for lab, (b, r) in enumerate(cluster_counts):
        colors += ["B"] * b + ["R"] * r
        labels += [lab] * (b + r)
    from fairmerge import normalize

    inst = ColoredInstance.from_colors(colors, p, q)
    return inst, normalize(labels, inst.n)


def has_three_partition(xs) -> bool:
    """Brute-force the 3-partition decision for small multisets."""
    xs = sorted(xs)
    if len(xs) % 3:
        return False
    triples = len(xs) // 3
    total = sum(xs)
    if total % triples:
        return False
    target = total // triples

    def rec(rest: tuple[int, ...]) -> bool:
        if not rest:
            return True
        first, tail = rest[0], rest[1:]
        seen = set()
        for i, j in combinations(range(len(tail)), 2):
            pair = (tail[i], tail[j])
            if pair in seen or first + tail[i] + tail[j] != target:
                continue
            seen.add(pair)
            nxt = tuple(x for t, x in enumerate(tail) if t not in (i, j))
            if rec(nxt):
                return True
        return False

    return rec(tuple(xs))
