"""Colored point sets, clusterings, and per-cluster counting arithmetic.

Points are identified by index 0..n-1.  Every point carries one of two
colors, and the whole set carries an irreducible target ratio p/q between
blue and red counts.  By convention the role called "blue" is always the
majority color: if the raw input has more red than blue points, the
constructor swaps the color roles and the ratio, and records that it did
so.  All algorithms downstream rely on p >= q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadClusterId, InfeasibleFairness, LengthMismatch


class Color(Enum):
    RED = "R"
    BLUE = "B"


def _coerce_color(c) -> Color:
    if isinstance(c, Color):
        return c
    if c in ("R", "r"):
        return Color.RED
    if c in ("B", "b"):
        return Color.BLUE
    raise ValueError(f"not a color: {c!r}")


@dataclass(frozen=True)
class ColoredInstance:
    """The point universe: colors as given, plus the working ratio.

    ``p``/``q`` are the irreducible ratio after the majority-role swap, so
    ``p >= q`` whenever a fair clustering can exist.  ``given_p``/``given_q``
    keep the ratio exactly as supplied, for display and serialization.
    """

    n: int
    colors: tuple[Color, ...]
    p: int
    q: int
    swapped: bool
    given_p: int
    given_q: int

    @classmethod
    def from_colors(cls, colors: Iterable, p: int, q: int) -> "ColoredInstance":
        cols = tuple(_coerce_color(c) for c in colors)
        if p < 1 or q < 1:
            raise ValueError("ratio parts must be positive integers")
        given_p, given_q = p, q
        g = math.gcd(p, q)
        p, q = p // g, q // g
        blue = sum(1 for c in cols if c is Color.BLUE)
        red = len(cols) - blue
        swapped = red > blue
        if swapped:
            p, q = q, p
        return cls(
            n=len(cols),
            colors=cols,
            p=p,
            q=q,
            swapped=swapped,
            given_p=given_p,
            given_q=given_q,
        )

    def role_is_blue(self, i: int) -> bool:
        """True when point ``i`` plays the majority ("blue") role."""
        return (self.colors[i] is Color.BLUE) != self.swapped

    @cached_property
    def role_blue_mask(self) -> np.ndarray:
        raw = np.fromiter(
            (c is Color.BLUE for c in self.colors), dtype=bool, count=self.n
        )
        return ~raw if self.swapped else raw

    @cached_property
    def blue_total(self) -> int:
        return int(self.role_blue_mask.sum())

    @cached_property
    def red_total(self) -> int:
        return self.n - self.blue_total


@dataclass(frozen=True)
class Clustering:
    """A partition of 0..n-1 as a label per point.

    Labels are contiguous ints 0..k-1 assigned by first occurrence; build
    instances through :func:`normalize` so this invariant always holds.
    Every cluster is nonempty.
    """

    labels: tuple[int, ...]
    k: int

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        """Point ids per cluster, each ascending."""
        buckets: list[list[int]] = [[] for _ in range(self.k)]
        for i, lab in enumerate(self.labels):
            buckets[lab].append(i)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def _array(self) -> np.ndarray:
        arr = np.asarray(self.labels, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    def labels_array(self) -> np.ndarray:
        return self._array


def normalize(labels: Sequence[int] | np.ndarray, n: int | None = None) -> Clustering:
    """Relabel a raw label sequence to contiguous ids by first occurrence.

    Idempotent; preserves the induced partition.  Raises
    :class:`LengthMismatch` when ``n`` is given and does not match.
    """
    arr = np.asarray(labels, dtype=np.int64)
    if arr.ndim != 1:
        raise LengthMismatch("labels must be a flat sequence")
    if n is not None and arr.shape[0] != n:
        raise LengthMismatch(f"expected {n} labels, got {arr.shape[0]}")
    if arr.shape[0] == 0:
        return Clustering(labels=(), k=0)
    _, first_idx, inverse = np.unique(arr, return_index=True, return_inverse=True)
    order = np.argsort(first_idx, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.shape[0])
    new = rank[inverse]
    return Clustering(labels=tuple(new.tolist()), k=int(order.shape[0]))


@dataclass(frozen=True)
class ClusterStats:
    """Red/blue counts of one cluster and their mod-p / mod-q arithmetic.

    ``s_b``/``s_r`` are the surpluses (counts mod p resp. q); ``d_b``/``d_r``
    the deficits up to the next multiple, zero when already divisible.
    """

    red_count: int
    blue_count: int
    s_r: int
    s_b: int
    d_r: int
    d_b: int
    size: int
    p: int
    q: int

    @classmethod
    def from_counts(cls, red_count: int, blue_count: int, p: int, q: int) -> "ClusterStats":
        s_r = red_count % q
        s_b = blue_count % p
        return cls(
            red_count=red_count,
            blue_count=blue_count,
            s_r=s_r,
            s_b=s_b,
            d_r=(q - s_r) % q,
            d_b=(p - s_b) % p,
            size=red_count + blue_count,
            p=p,
            q=q,
        )

    @property
    def is_balanced(self) -> bool:
        return self.s_r == 0 and self.s_b == 0

    @property
    def is_fair(self) -> bool:
        return self.blue_count * self.q == self.red_count * self.p


def cluster_stats(instance: ColoredInstance, clustering: Clustering, cluster_id: int) -> ClusterStats:
    """Counts and surplus/deficit fields for one cluster."""
    if not 0 <= cluster_id < clustering.k:
        raise BadClusterId(f"cluster id {cluster_id} not in 0..{clustering.k - 1}")
    pts = clustering.members[cluster_id]
    blue = sum(1 for i in pts if instance.role_is_blue(i))
    return ClusterStats.from_counts(len(pts) - blue, blue, instance.p, instance.q)


def all_stats(instance: ColoredInstance, clustering: Clustering) -> list[ClusterStats]:
    """Per-cluster stats for the whole clustering in one pass."""
    if clustering.k == 0:
        return []
    labels = clustering.labels_array()
    mask = instance.role_blue_mask
    blue = np.bincount(labels[mask], minlength=clustering.k)
    red = np.bincount(labels[~mask], minlength=clustering.k)
    return [
        ClusterStats.from_counts(int(r), int(b), instance.p, instance.q)
        for r, b in zip(red, blue)
    ]


def validate_feasible(instance: ColoredInstance) -> None:
    """Check that a fair clustering over the whole set can exist.

    Requires the blue total to be a multiple of p, the red total a multiple
    of q, and the totals to sit in exact ratio p/q.
    """
    b, r, p, q = instance.blue_total, instance.red_total, instance.p, instance.q
    if b % p != 0 or r % q != 0 or b * q != r * p:
        raise InfeasibleFairness(
            f"totals blue={b}, red={r} incompatible with ratio {p}/{q}"
        )


def validate_balance_feasible(instance: ColoredInstance) -> None:
    """Check that a balanced clustering over the whole set can exist."""
    b, r, p, q = instance.blue_total, instance.red_total, instance.p, instance.q
    if b % p != 0 or r % q != 0:
        raise InfeasibleFairness(
            f"totals blue={b}, red={r} not multiples of p={p}, q={q}"
        )


def is_fair(instance: ColoredInstance, clustering: Clustering) -> bool:
    """True when every cluster's blue:red ratio equals p/q exactly."""
    return all(st.is_fair for st in all_stats(instance, clustering))


def is_balanced(instance: ColoredInstance, clustering: Clustering) -> bool:
    """True when every cluster has blue divisible by p and red by q."""
    return all(st.is_balanced for st in all_stats(instance, clustering))
