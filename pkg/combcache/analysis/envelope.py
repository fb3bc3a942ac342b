"""Lower convex envelopes of memory-load points, for tradeoff curves."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from combcache.analysis.memory import SchemePoint, k_counts, routing_point, scheme_point
from combcache.shared.scheme_kind import SchemeKind
from combcache.topology import k_i

Vertex = Tuple[Fraction, Fraction]


def _cross(o: Vertex, a: Vertex, b: Vertex) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class TradeoffCurve:
    N: Fraction
    vertices: Tuple[Vertex, ...]

    def evaluate(self, M) -> Fraction:
        M = Fraction(M)
        if not self.vertices[0][0] <= M <= self.vertices[-1][0]:
            raise ValueError(f"M={M} outside [{self.vertices[0][0]}, {self.vertices[-1][0]}]")
        for (m0, r0), (m1, r1) in zip(self.vertices, self.vertices[1:]):
            if m0 <= M <= m1:
                return r0 + (r1 - r0) * (M - m0) / (m1 - m0)
        return self.vertices[0][1]

    def sample(self, grid: int) -> List[Vertex]:
        """The curve on `grid` evenly spaced memories from 0 to N."""
        if grid < 2:
            raise ValueError(f"grid needs at least 2 points, got {grid}")
        res = []
        for i in range(grid):
            M = self.N * Fraction(i, grid - 1)
            res.append((M, self.evaluate(M)))
        return res


def envelope(points: Sequence[SchemePoint]) -> TradeoffCurve:
    """Lower convex hull of (M, max-link load) over `points`.

    The points must reach M = 0; the largest M among them is taken as N.
    """
    if not points:
        raise ValueError("envelope needs at least one point")

    best = {}
    for p in points:
        if p.M not in best or p.R < best[p.M]:
            best[p.M] = p.R
    pts = sorted(best.items())
    if pts[0][0] != 0:
        raise ValueError(f"envelope points start at M={pts[0][0]}, expected 0")

    hull: List[Vertex] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return TradeoffCurve(N=pts[-1][0], vertices=tuple(hull))


def tradeoff_points(kind: str, N: int, H: int, r: int) -> List[SchemePoint]:
    """Every achievable point of a scheme plus the trivial cache-everything point."""
    if kind == SchemeKind.ROUTING:
        return [routing_point(N, H, r, 0), routing_point(N, H, r, 1)]

    points = [scheme_point(kind, N, H, r, g) for g in range(1, k_i(H, r, 1) + 1)]
    points.append(
        SchemePoint(scheme=kind, g=None, M=Fraction(N), R1=Fraction(0), R2=Fraction(0))
    )
    return points


def tradeoff_curve(kind: str, N: int, H: int, r: int) -> TradeoffCurve:
    return envelope(tradeoff_points(kind, N, H, r))


def load_ratio(
    numerator: TradeoffCurve, denominator: TradeoffCurve, grid: int
) -> List[Tuple[Fraction, Optional[Fraction]]]:
    """Pointwise ratio of two curves; None where the denominator load is 0."""
    res = []
    for M, R_num in numerator.sample(grid):
        R_den = denominator.evaluate(M)
        res.append((M, R_num / R_den if R_den else None))
    return res


def subpacketization(kind: str, H: int, r: int) -> List[Tuple[int, int]]:
    """(g, n) for every gain, to compare how finely files are split."""
    return [(g, k_counts(kind, H, r, g).n) for g in range(1, k_i(H, r, 1) + 1)]
