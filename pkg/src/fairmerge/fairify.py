"""Convert a balanced clustering into a fair one by relocating red points.

With p >= q, every balanced cluster either has too many red points for its
blue count (its red excess is a positive integer), too few (a positive red
shortfall), or is already fair.  Moving exactly the excess reds out of the
first kind and into the second makes every cluster fair; no blue point
ever moves.  The achieved distance is at most 3 times that of the closest
fair clustering.
"""

from __future__ import annotations

from enum import Enum

from .errors import InfeasibleFairness, NotBalanced
from .model import Clustering, ClusterStats, ColoredInstance, validate_feasible
from .transcript import ClusterState, Transcript


class TypeTag(Enum):
    TYPE_RED = "red-surplus"
    TYPE_BLUE = "red-deficit"
    NEUTRAL = "fair"


def red_imbalance(stats: ClusterStats, p: int, q: int) -> int:
    """red_count - (q/p) * blue_count; positive means spare reds.

    Integral for balanced clusters, where p divides the blue count.
    """
    if (q * stats.blue_count) % p:
        raise NotBalanced(
            f"blue count {stats.blue_count} not a multiple of p = {p}"
        )
    return stats.red_count - (q * stats.blue_count) // p


def classify(stats: ClusterStats, p: int, q: int) -> TypeTag:
    sigma = red_imbalance(stats, p, q)
    if sigma > 0:
        return TypeTag.TYPE_RED
    if sigma < 0:
        return TypeTag.TYPE_BLUE
    return TypeTag.NEUTRAL


def _make_clusters_fair(state: ClusterState) -> None:
    p, q = state.instance.p, state.instance.q
    donors: list[tuple[int, int]] = []  # (key, spare reds)
    receivers: list[tuple[int, int]] = []  # (key, missing reds)
    for c in range(len(state.clusters)):
        b, r = state.blue_count(c), state.red_count(c)
        if b == 0 and r == 0:
            continue
        if (q * b) % p:
            raise NotBalanced(f"cluster {c}: blue count {b} not a multiple of {p}")
        sigma = r - (q * b) // p
        if sigma > 0:
            donors.append((c, sigma))
        elif sigma < 0:
            receivers.append((c, -sigma))
    if sum(s for _, s in donors) != sum(d for _, d in receivers):
        raise InfeasibleFairness("red spares and red shortfalls do not match")
    di = ri = 0
    rem_s = donors[di][1] if donors else 0
    rem_d = receivers[ri][1] if receivers else 0
    while di < len(donors) and ri < len(receivers):
        k = min(rem_s, rem_d)
        state.move(donors[di][0], receivers[ri][0], "red", k)
        rem_s -= k
        rem_d -= k
        if rem_s == 0:
            di += 1
            if di < len(donors):
                rem_s = donors[di][1]
        if rem_d == 0:
            ri += 1
            if ri < len(receivers):
                rem_d = receivers[ri][1]


def make_clusters_fair(
    instance: ColoredInstance, balanced: Clustering
) -> tuple[Clustering, Transcript]:
    """Fair clustering at most 3 times further from ``balanced`` than optimal."""
    validate_feasible(instance)
    state = ClusterState(instance, balanced)
    _make_clusters_fair(state)
    return state.to_clustering(), state.transcript
