"""Replayable move records and the mutable cluster state behind the algorithms.

Every rebalancing algorithm works by moving sets of same-colored points
between clusters.  ``ClusterState`` applies those moves and prices each one
exactly: the recorded cost of a move is the change it causes in the
pairwise-disagreement distance to a fixed baseline clustering.  Because the
costs telescope, their sum always equals dist(baseline, final state), which
is what makes transcripts auditable.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field

import numpy as np

from .model import Clustering, ColoredInstance, normalize


@dataclass(frozen=True)
class Move:
    """One transfer of ``points`` from cluster ``src`` to cluster ``dst``.

    ``cost`` is the exact change in distance to the transcript's baseline
    caused by this move, computed at the moment it was applied.
    """

    points: tuple[int, ...]
    src: int
    dst: int
    cost: int


@dataclass
class Transcript:
    """Ordered list of moves an algorithm performed, plus run statistics."""

    moves: list[Move] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def total_cost(self) -> int:
        return sum(m.cost for m in self.moves)

    def replay(self, baseline: Clustering) -> tuple[Clustering, int]:
        """Re-apply the moves from ``baseline`` and re-price them naively.

        Returns the reconstructed final clustering and the recomputed total
        cost.  The pricing here iterates real point pairs, independently of
        the counter arithmetic used while recording, so agreement between
        the two is a genuine cross-check.
        """
        clusters: dict[int, set[int]] = {
            c: set(pts) for c, pts in enumerate(baseline.members)
        }
        base = baseline.labels
        total = 0
        for mv in self.moves:
            src = clusters[mv.src]
            dst = clusters.setdefault(mv.dst, set())
            for u in mv.points:
                src.remove(u)
            d = 0
            for u in mv.points:
                bu = base[u]
                for v in src:
                    d += 1 if base[v] == bu else -1
                for v in dst:
                    d += -1 if base[v] == bu else 1
            dst.update(mv.points)
            total += d
            if not src:
                del clusters[mv.src]
        labels = [0] * baseline.n
        for key, pts in clusters.items():
            for u in pts:
                labels[u] = key
        return normalize(labels, baseline.n), total


class _WorkCluster:
    __slots__ = ("reds", "blues", "origin")

    def __init__(self) -> None:
        self.reds: list[int] = []
        self.blues: list[int] = []
        # baseline cluster id -> number of points from it currently here
        self.origin: dict[int, int] = {}

    @property
    def size(self) -> int:
        return len(self.reds) + len(self.blues)


class ClusterState:
    """Mutable clustering the algorithms edit, keyed by stable cluster ids.

    Keys 0..k-1 are the baseline clusters; clusters created later get fresh
    keys in creation order, which keeps transcripts replayable.  Point lists
    are held sorted ascending so "the s highest-indexed blue points" is a
    well-defined deterministic cut.
    """

    def __init__(self, instance: ColoredInstance, clustering: Clustering) -> None:
        self.instance = instance
        self.baseline = clustering
        self._base_labels = list(clustering.labels)
        self.transcript = Transcript()
        self.cost = 0
        self.clusters: list[_WorkCluster] = [_WorkCluster() for _ in range(clustering.k)]
        if clustering.n:
            labels = clustering.labels_array()
            mask = instance.role_blue_mask
            order = np.argsort(labels, kind="stable")
            sorted_labels = labels[order]
            bounds = np.searchsorted(sorted_labels, np.arange(clustering.k + 1))
            for c in range(clustering.k):
                seg = order[bounds[c] : bounds[c + 1]]
                seg_blue = mask[seg]
                wc = self.clusters[c]
                wc.blues = seg[seg_blue].tolist()
                wc.reds = seg[~seg_blue].tolist()
                wc.origin = {c: int(seg.shape[0])}

    # -- inspection ---------------------------------------------------

    def blue_count(self, key: int) -> int:
        return len(self.clusters[key].blues)

    def red_count(self, key: int) -> int:
        return len(self.clusters[key].reds)

    def size(self, key: int) -> int:
        return self.clusters[key].size

    def alive_keys(self) -> list[int]:
        return [k for k, c in enumerate(self.clusters) if c.size > 0]

    # -- mutation -----------------------------------------------------

    def new_cluster(self) -> int:
        self.clusters.append(_WorkCluster())
        return len(self.clusters) - 1

    def move(self, src: int, dst: int, color: str, count: int, from_low: bool = False) -> int:
        """Move ``count`` points of ``color`` from src to dst; returns the cost.

        Takes the highest point ids by default, the lowest when ``from_low``.
        The cost is the exact change in distance to the baseline, computed
        from per-cluster origin counters.
        """
        if count == 0:
            return 0
        if src == dst:
            raise ValueError("move within one cluster")
        sc = self.clusters[src]
        lst = sc.blues if color == "blue" else sc.reds
        if count > len(lst):
            raise ValueError(f"cluster {src} has only {len(lst)} {color} points")
        if from_low:
            pts = lst[:count]
            del lst[:count]
        else:
            pts = lst[-count:]
            del lst[-count:]

        porig: dict[int, int] = {}
        for u in pts:
            g = self._base_labels[u]
            porig[g] = porig.get(g, 0) + 1
        so = sc.origin
        for g, c in porig.items():
            left = so[g] - c
            if left:
                so[g] = left
            else:
                del so[g]

        dc = self.clusters[dst]
        m_src = sum(c * so.get(g, 0) for g, c in porig.items())
        m_dst = sum(c * dc.origin.get(g, 0) for g, c in porig.items())
        delta = 2 * m_src - count * sc.size + count * dc.size - 2 * m_dst

        tgt = dc.blues if color == "blue" else dc.reds
        if not tgt or pts[0] > tgt[-1]:
            tgt.extend(pts)
        else:
            for u in pts:
                insort(tgt, u)
        do = dc.origin
        for g, c in porig.items():
            do[g] = do.get(g, 0) + c

        self.cost += delta
        self.transcript.moves.append(Move(tuple(pts), src, dst, delta))
        return delta

    # -- output -------------------------------------------------------

    def to_clustering(self) -> Clustering:
        out = np.empty(self.baseline.n, dtype=np.int64)
        for key, wc in enumerate(self.clusters):
            if wc.size == 0:
                continue
            if wc.reds:
                out[np.asarray(wc.reds, dtype=np.int64)] = key
            if wc.blues:
                out[np.asarray(wc.blues, dtype=np.int64)] = key
        return normalize(out, self.baseline.n)
