"""(rho, sigma)-gradings of Laurent polynomials and their Newton polygons.

Directions are ordered by the counterclockwise angle of the vector
``(rho, sigma)`` measured from ``(1, -1)``.  Rotating by 45 degrees maps the
reference ray to the positive first axis, so the comparison reduces to a
half-plane test plus a cross product on ``(rho - sigma, rho + sigma)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from math import gcd

from .laurent import LaurentPoly


class EmptyPolygonError(ValueError):
    """Raised for gradings of the zero polynomial or an empty Dir set."""


@total_ordering
@dataclass(frozen=True)
class Direction:
    rho: int
    sigma: int

    def __post_init__(self):
        if self.rho == 0 and self.sigma == 0:
            raise ValueError("(0, 0) is not a direction")
        if gcd(self.rho, self.sigma) != 1:
            raise ValueError(f"direction ({self.rho}, {self.sigma}) is not primitive")

    @classmethod
    def primitive(cls, rho: int, sigma: int) -> "Direction":
        g = gcd(rho, sigma)
        return cls(rho // g, sigma // g)

    def _rotated(self) -> tuple[int, int]:
        return self.rho - self.sigma, self.rho + self.sigma

    def _half(self) -> int:
        u, v = self._rotated()
        return 0 if v > 0 or (v == 0 and u > 0) else 1

    def __lt__(self, other: "Direction") -> bool:
        if not isinstance(other, Direction):
            return NotImplemented
        h1, h2 = self._half(), other._half()
        if h1 != h2:
            return h1 < h2
        (u1, v1), (u2, v2) = self._rotated(), other._rotated()
        return u1 * v2 - v1 * u2 > 0

    def v(self, i: int, j: int) -> int:
        return self.rho * i + self.sigma * j

    def __iter__(self):
        return iter((self.rho, self.sigma))

    def __str__(self):
        return f"({self.rho},{self.sigma})"


def _dir(d) -> Direction:
    return d if isinstance(d, Direction) else Direction(*d)


def _nonzero(p: LaurentPoly):
    if p.is_zero():
        raise EmptyPolygonError("grading of the zero polynomial")


def support(p: LaurentPoly) -> set[tuple[int, int]]:
    return p.support()


def vdeg(p: LaurentPoly, d) -> int:
    _nonzero(p)
    d = _dir(d)
    return max(d.v(i, j) for i, j in p.terms)


def vmin(p: LaurentPoly, d) -> int:
    _nonzero(p)
    d = _dir(d)
    return min(d.v(i, j) for i, j in p.terms)


def leading_form(p: LaurentPoly, d) -> LaurentPoly:
    d = _dir(d)
    top = vdeg(p, d)
    return LaurentPoly({k: c for k, c in p.terms.items() if d.v(*k) == top}, p.ctx)


def trailing_form(p: LaurentPoly, d) -> LaurentPoly:
    d = _dir(d)
    low = vmin(p, d)
    return LaurentPoly({k: c for k, c in p.terms.items() if d.v(*k) == low}, p.ctx)


def is_homogeneous(p: LaurentPoly, d) -> bool:
    return p.is_zero() or vdeg(p, d) == vmin(p, d)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[int, int]]:
    """Vertices in counterclockwise order (monotone chain, collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def edge_normals(p: LaurentPoly) -> list[Direction]:
    """Outer normals of every Newton polygon edge, sorted by angle."""
    _nonzero(p)
    hull = convex_hull(p.terms)
    if len(hull) < 2:
        return []
    out = set()
    for k in range(len(hull)):
        a, b = hull[k], hull[(k + 1) % len(hull)]
        di, dj = b[0] - a[0], b[1] - a[1]
        # outward normal of a counterclockwise edge
        out.add(Direction.primitive(dj, -di))
    return sorted(out)


LOWEST = Direction(1, -1)
HIGHEST = Direction(-1, 1)


def in_upper_half(d: Direction) -> bool:
    """``rho + sigma >= 0``: angles from (1,-1) to (-1,1), both included."""
    return d.rho + d.sigma >= 0


def directions(p: LaurentPoly) -> list[Direction]:
    """Dir(p): edge normals with rho + sigma >= 0, sorted by angle."""
    return [d for d in edge_normals(p) if in_upper_half(d)]


@dataclass(frozen=True)
class EdgeData:
    st: tuple[int, int]
    en: tuple[int, int]
    direction: Direction
    t: int


def edge_endpoints(p: LaurentPoly, d) -> EdgeData:
    """``st`` minimizes and ``en`` maximizes ``rho*j - sigma*i`` on the leading form."""
    d = _dir(d)
    lf = leading_form(p, d)
    key = lambda k: d.rho * k[1] - d.sigma * k[0]
    st = min(lf.terms, key=key)
    en = max(lf.terms, key=key)
    # en - st = t * (-sigma, rho)
    t = (key(en) - key(st)) // (d.rho ** 2 + d.sigma ** 2)
    return EdgeData(st, en, d, t)


def next_after(dirs, d, cyclic: bool = False) -> Direction:
    """Smallest element of ``dirs`` after ``d``.

    Without a later element the answer is (-1, 1), the top of the ordered
    half-plane; ``cyclic=True`` wraps to the smallest element instead.
    """
    d = _dir(d)
    dirs = sorted(_dir(e) for e in dirs)
    if not dirs:
        raise EmptyPolygonError("Dir is empty")
    for e in dirs:
        if d < e:
            return e
    return dirs[0] if cyclic else HIGHEST


def prev_before(dirs, d, cyclic: bool = False) -> Direction:
    """Largest element of ``dirs`` before ``d``; (1, -1) when there is none."""
    d = _dir(d)
    dirs = sorted(_dir(e) for e in dirs)
    if not dirs:
        raise EmptyPolygonError("Dir is empty")
    for e in reversed(dirs):
        if e < d:
            return e
    return dirs[-1] if cyclic else LOWEST


def succ_dir(p: LaurentPoly, d, cyclic: bool = False) -> Direction:
    return next_after(directions(p), d, cyclic)


def pred_dir(p: LaurentPoly, d, cyclic: bool = False) -> Direction:
    return prev_before(directions(p), d, cyclic)


PSI3_PIVOT = Direction(-1, 2)


def apply_dir_map(k: int, d) -> Direction:
    """Action of psi1 (k=1) or psi3 (k=3) on directions."""
    rho, sigma = _dir(d)
    if k == 1:
        return Direction(sigma, rho)
    if k == 3:
        if _dir(d) <= PSI3_PIVOT:
            return Direction(-rho, 3 * rho + sigma)
        return Direction(rho, -3 * rho - sigma)
    raise ValueError("k must be 1 or 3")


@dataclass
class PolygonRecord:
    """Neutral geometry for rendering: support, hull and labelled edges."""

    support: list[tuple[int, int]]
    hull: list[tuple[int, int]]
    edges: list[EdgeData] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "support": [list(s) for s in self.support],
            "hull": [list(h) for h in self.hull],
            "edges": [{"st": list(e.st), "en": list(e.en),
                       "direction": [e.direction.rho, e.direction.sigma]} for e in self.edges],
        }


def polygon(p: LaurentPoly) -> PolygonRecord:
    _nonzero(p)
    return PolygonRecord(sorted(p.terms), convex_hull(p.terms),
                         [edge_endpoints(p, d) for d in directions(p)])
