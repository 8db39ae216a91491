from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Tuple

from src.core.errors import FareyDepthError, PreconditionError


@dataclass(frozen=True)
class Slope:
    """A reduced fraction q/p. Infinity is stored as 1/0."""

    q: int
    p: int

    def __post_init__(self):
        q, p = int(self.q), int(self.p)
        if q == 0 and p == 0:
            raise PreconditionError("0/0 is not a slope")
        if p < 0:
            q, p = -q, -p
        if p == 0:
            q = 1
        g = gcd(q, p)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "p", p // g)

    @classmethod
    def from_vector(cls, x: int, y: int) -> "Slope":
        """Slope of the class x*mu + y*lambda."""
        return cls(y, x)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        raw = text.strip()
        try:
            if "/" in raw:
                q, p = raw.split("/", 1)
                return cls(int(q), int(p))
            return cls(int(raw), 1)
        except ValueError as e:
            raise PreconditionError(f"not a slope: {text!r}") from e

    @property
    def is_infinite(self) -> bool:
        return self.p == 0

    def vector(self) -> Tuple[int, int]:
        return (self.p, self.q)

    def _order_key(self):
        # infinity sorts last, which is a valid cut of the circle
        return (1, Fraction(0)) if self.is_infinite else (0, Fraction(self.q, self.p))

    def __lt__(self, other: "Slope") -> bool:
        return self._order_key() < other._order_key()

    def __str__(self) -> str:
        return f"{self.q}/{self.p}"


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)


@dataclass(frozen=True)
class ContinuedFraction:
    terms: Tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise PreconditionError("a continued fraction needs at least one term")
        if any(a <= 0 for a in self.terms[1:]):
            raise PreconditionError("terms after the first must be positive")

    def value(self) -> Fraction:
        acc = Fraction(self.terms[-1])
        for a in reversed(self.terms[:-1]):
            acc = a + 1 / acc
        return acc

    def slope(self) -> Slope:
        v = self.value()
        return Slope(v.numerator, v.denominator)

    def __str__(self) -> str:
        head, tail = self.terms[0], self.terms[1:]
        if not tail:
            return f"[{head}]"
        return f"[{head};" + ",".join(str(a) for a in tail) + "]"


def continued_fraction(s: Slope) -> ContinuedFraction:
    if s.is_infinite or s.q <= 0:
        raise PreconditionError(f"continued fraction needs a finite positive slope, got {s}")
    terms = []
    q, p = s.q, s.p
    while p:
        a, r = divmod(q, p)
        terms.append(a)
        q, p = p, r
    return ContinuedFraction(tuple(terms))


def norm(s: Slope) -> int:
    """Sum of the continued fraction terms of |q|/p."""
    if s.is_infinite or s.q == 0:
        raise PreconditionError(f"norm is undefined for {s}")
    return sum(continued_fraction(Slope(abs(s.q), s.p)).terms)


def farey_adjacent(a: Slope, b: Slope) -> bool:
    return abs(a.q * b.p - a.p * b.q) == 1


def complement_slope(s: Slope) -> Slope:
    if not 0 < s.q < s.p:
        raise PreconditionError(f"complement needs 0 < q < p, got {s}")
    return Slope(s.p - s.q, s.p)


@dataclass(frozen=True)
class FareyTriangle:
    vertices: frozenset

    def __post_init__(self):
        verts = frozenset(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) != 3:
            raise PreconditionError("a Farey triangle has three distinct vertices")
        a, b, c = sorted(verts)
        if not (farey_adjacent(a, b) and farey_adjacent(b, c) and farey_adjacent(a, c)):
            raise PreconditionError(f"({a}, {b}, {c}) is not a Farey triangle")

    @classmethod
    def of(cls, *slopes: Slope) -> "FareyTriangle":
        return cls(frozenset(slopes))

    def ordered(self) -> Tuple[Slope, Slope, Slope]:
        return tuple(sorted(self.vertices))

    def __contains__(self, s: Slope) -> bool:
        return s in self.vertices

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.ordered()) + ")"


BASE_POSITIVE = FareyTriangle.of(ZERO, INFINITY, Slope(1, 1))
BASE_NEGATIVE = FareyTriangle.of(ZERO, INFINITY, Slope(-1, 1))


def _combine(u: Slope, v: Slope, sign: int) -> Slope:
    return Slope(u.q + sign * v.q, u.p + sign * v.p)


def flip(triangle: FareyTriangle, vertex: Slope) -> FareyTriangle:
    """The neighbouring triangle across the edge opposite vertex."""
    if vertex not in triangle:
        raise PreconditionError(f"{vertex} is not a vertex of {triangle}")
    u, v = sorted(triangle.vertices - {vertex})
    new = _combine(u, v, 1)
    if new == vertex:
        new = _combine(u, v, -1)
    return FareyTriangle.of(u, v, new)


def _strictly_between(x: Slope, lo: Slope, hi: Slope) -> bool:
    return lo < x < hi


def _arc_contains(u: Slope, v: Slope, w: Slope, target: Slope) -> bool:
    """Whether target lies on the open arc from u to v that avoids w."""
    lo, hi = sorted((u, v))
    if _strictly_between(w, lo, hi):
        return target < lo or hi < target
    return _strictly_between(target, lo, hi)


def geodesic_to_slope(start: FareyTriangle, target: Slope) -> List[FareyTriangle]:
    """Geodesic in the dual tree from start to the first triangle with target as a vertex."""
    walk = [start]
    current = start
    while target not in current:
        for w in current.ordered():
            u, v = sorted(current.vertices - {w})
            if _arc_contains(u, v, w, target):
                current = flip(current, w)
                break
        else:  # pragma: no cover
            raise PreconditionError(f"cannot steer from {current} to {target}")
        walk.append(current)
    return walk


def farey_walk(target: Slope, start: FareyTriangle) -> List[FareyTriangle]:
    if target.is_infinite or not 0 < target.q < target.p:
        raise PreconditionError(f"walk target must lie in (0,1), got {target}")
    if start not in (BASE_POSITIVE, BASE_NEGATIVE):
        raise PreconditionError(f"walk must start at (0,inf,1) or (0,inf,-1), got {start}")
    return geodesic_to_slope(start, target)


def best_start(target: Slope) -> Tuple[FareyTriangle, List[FareyTriangle]]:
    """Cheaper of the two base triangles and its walk, ties going to (0,inf,1)."""
    positive = farey_walk(target, BASE_POSITIVE)
    negative = farey_walk(target, BASE_NEGATIVE)
    if len(negative) < len(positive):
        return BASE_NEGATIVE, negative
    return BASE_POSITIVE, positive


def _in_box(triangle: FareyTriangle, max_num: int, max_den: int) -> bool:
    return all(abs(s.q) <= max_num and s.p <= max_den for s in triangle.vertices)


def _enumerate_tree(depth: int, max_num: int, max_den: int):
    """Triangles of generation <= depth inside the box, with dual-tree adjacency."""
    neighbours = {BASE_POSITIVE: {BASE_NEGATIVE}, BASE_NEGATIVE: {BASE_POSITIVE}}
    queue = deque()
    root_edge = frozenset((ZERO, INFINITY))
    for root in (BASE_POSITIVE, BASE_NEGATIVE):
        queue.append((root, root_edge, 0))
    while queue:
        triangle, parent_edge, generation = queue.popleft()
        if generation == depth:
            continue
        for w in triangle.ordered():
            edge = triangle.vertices - {w}
            if edge == parent_edge:
                continue
            child = flip(triangle, w)
            if not _in_box(child, max_num, max_den):
                continue
            neighbours.setdefault(child, set()).add(triangle)
            neighbours[triangle].add(child)
            queue.append((child, edge, generation + 1))
    return neighbours


def farey_line_distance_oracle(a: Slope, b: Slope, depth: int) -> int:
    """BFS distance in the dual tree between the triangles at a and those at b.

    Only triangles of Stern-Brocot generation <= depth are enumerated, and only
    those whose vertices fit in the numerator/denominator box of a and b: every
    triangle separating the two fans lives in that box.
    """
    if a == b:
        raise PreconditionError("distance oracle needs two distinct slopes")
    if depth < 0:
        raise PreconditionError("depth must be non-negative")
    max_num = max(abs(a.q), abs(b.q), 1)
    max_den = max(a.p, b.p, 1)
    neighbours = _enumerate_tree(depth, max_num, max_den)
    sources = [t for t in neighbours if a in t]
    goals = {t for t in neighbours if b in t}
    if not sources or not goals:
        raise FareyDepthError(depth)
    distance = {t: 0 for t in sources}
    queue = deque(sources)
    while queue:
        t = queue.popleft()
        if t in goals:
            return distance[t]
        for n in neighbours[t]:
            if n not in distance:
                distance[n] = distance[t] + 1
                queue.append(n)
    raise FareyDepthError(depth)


def format_walk(walk: Iterable[FareyTriangle]) -> str:
    return " -> ".join(str(t) for t in walk)


def parse_slope(text: str) -> Slope:
    return Slope.parse(text)
