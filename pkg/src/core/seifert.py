from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

from src.core.errors import PreconditionError, VerificationError
from src.core.farey import Slope, norm
from src.core.homology import AbelianGroup, IntMatrix, invariant_factors


@dataclass(frozen=True)
class SeifertData:
    """Bounded Seifert fibred space [base, (p1, q1), ..., (pn, qn)].

    a is twice the genus of an orientable base and the number of
    cross-caps of a nonorientable one. Fibres are stored as slopes q/p.
    """

    orientable_base: bool
    a: int
    b: int
    fibres: Tuple[Slope, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "fibres", tuple(self.fibres))
        if self.b < 1:
            raise PreconditionError("closed Seifert fibred spaces (b = 0) are not supported")
        if self.a < 0:
            raise PreconditionError(f"a must be non-negative, got {self.a}")
        if self.orientable_base and self.a % 2:
            raise PreconditionError(f"an orientable base has even a, got {self.a}")
        if not self.orientable_base and self.a < 1:
            raise PreconditionError("a nonorientable base has a >= 1")
        for s in self.fibres:
            if s.is_infinite or not 0 < s.q < s.p or s.p < 2:
                raise PreconditionError(f"fibre {s.p}/{s.q} is not normalized (need 0 < q < p)")

    @property
    def chi(self) -> int:
        return 2 - self.a - self.b

    @property
    def norm_sum(self) -> int:
        return sum(norm(s) for s in self.fibres)

    def base_name(self) -> str:
        if self.orientable_base and self.a == 0:
            return {1: "disc", 2: "annulus"}.get(self.b, f"sphere with {self.b} holes")
        if not self.orientable_base and self.a == 1 and self.b == 1:
            return "Mobius band"
        kind = "orientable" if self.orientable_base else "nonorientable"
        return f"{kind} a={self.a} surface with {self.b} holes"

    def __str__(self) -> str:
        return format_seifert(self)


def _reduce_fibre(p: int, q: int) -> Optional[Slope]:
    if p < 1:
        raise PreconditionError(f"fibre multiplicity must be positive, got {p}")
    q %= p
    if p == 1 or q == 0:
        return None
    if gcd(p, q) != 1:
        raise PreconditionError(f"fibre {p}/{q} is not coprime")
    return Slope(q, p)


def normalize(fibres: Sequence[Tuple[int, int]], orientable_base: bool, a: int, b: int) -> SeifertData:
    """Reduce every q mod p and drop regular fibres."""
    reduced = [_reduce_fibre(p, q) for p, q in fibres]
    return SeifertData(orientable_base, a, b, tuple(s for s in reduced if s is not None))


_GRAMMAR = re.compile(r"^sfs (?P<kind>[on]) a=(?P<a>\d+) b=(?P<b>\d+)(?: fibres=(?P<fibres>\d+/-?\d+(?:,\d+/-?\d+)*))?$")


def parse_seifert(text: str) -> SeifertData:
    """Parse "sfs <o|n> a=<int> b=<int> fibres=<p>/<q>,..." and normalize it."""
    match = _GRAMMAR.match(text.strip())
    if not match:
        raise PreconditionError(f"not Seifert data: {text!r}")
    pairs = []
    if match.group("fibres"):
        for item in match.group("fibres").split(","):
            p, q = item.split("/")
            pairs.append((int(p), int(q)))
    return normalize(pairs, match.group("kind") == "o", int(match.group("a")), int(match.group("b")))


def format_seifert(d: SeifertData) -> str:
    text = f"sfs {'o' if d.orientable_base else 'n'} a={d.a} b={d.b}"
    if d.fibres:
        text += " fibres=" + ",".join(f"{s.p}/{s.q}" for s in d.fibres)
    return text


def upper_bound(d: SeifertData) -> int:
    return 96 * abs(d.chi) + 176 + 70 * d.norm_sum


def chi_lower_bound(d: SeifertData) -> Fraction:
    return Fraction(abs(d.chi) + 1, 6)


def presentation_matrix(d: SeifertData) -> IntMatrix:
    """Relations on (x1, ..., xn, h): p_i x_i + q_i h = 0, and 2h = 0 over a nonorientable base."""
    n = len(d.fibres)
    rows = []
    for i, s in enumerate(d.fibres):
        row = [0] * (n + 1)
        row[i], row[n] = s.p, s.q
        rows.append(row)
    if not d.orientable_base:
        rows.append([0] * n + [2])
    return IntMatrix.from_rows(rows, n + 1)


def expected_h1(d: SeifertData) -> AbelianGroup:
    """H1 predicted from the abelianized presentation of the bounded Seifert fibred space."""
    m = presentation_matrix(d)
    sparse = [{c: x for c, x in enumerate(row) if x} for row in m.to_lists()]
    fibre_part = AbelianGroup.from_diagonal(m.cols, invariant_factors(sparse))
    # surface generators plus all but one boundary class are free
    group = AbelianGroup(d.a + d.b - 1 + fibre_part.rank, fibre_part.invariant_factors)
    wanted = abs(2 - d.chi) if d.orientable_base else abs(1 - d.chi)
    if group.rank != wanted:
        raise VerificationError("free rank of H1", f"{group.rank} != {wanted} for {format_seifert(d)}")
    return group


@dataclass
class BoundReport:
    data: SeifertData
    proxy: int
    upper_bound: int
    chi_lower_bound: Fraction
    solid_torus_exclusion: bool
    achieved: Optional[int] = None

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.achieved is None:
            return None
        return Fraction(self.achieved, self.proxy)

    @property
    def within_bound(self) -> Optional[bool]:
        if self.achieved is None:
            return None
        return self.achieved <= self.upper_bound

    def lines(self) -> List[str]:
        out = [
            f"seifert data: {format_seifert(self.data)}",
            f"base: {self.data.base_name()} (chi={self.data.chi})",
            f"complexity proxy: {self.proxy}",
            f"upper bound: {self.upper_bound}",
            f"chi lower bound: {self.chi_lower_bound}",
        ]
        if self.solid_torus_exclusion:
            out.append("note: solid torus exclusion applies (disc base with one fibre)")
        if self.achieved is not None:
            out.append(f"achieved: {self.achieved}")
            out.append(f"achieved/proxy: {self.ratio}")
        return out


def theorem_bound_report(d: SeifertData, achieved: Optional[int] = None) -> BoundReport:
    return BoundReport(
        data=d,
        proxy=abs(d.chi) + d.norm_sum + 1,
        upper_bound=upper_bound(d),
        chi_lower_bound=chi_lower_bound(d),
        solid_torus_exclusion=d.orientable_base and d.a == 0 and d.b == 1 and len(d.fibres) == 1,
        achieved=achieved,
    )


def fibre_slopes(pmax: int) -> List[Slope]:
    return [Slope(q, p) for p in range(2, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


def grid_instances(
    pmax: int = 12,
    chi_min: int = -4,
    b_max: int = 3,
    max_fibres: int = 3,
    orientable_only: bool = False,
) -> Iterator[SeifertData]:
    """Bases with chi >= chi_min and 1 <= b <= b_max, each with a sweep of fibre lists.

    Fibre lists are the empty list, every single slope with p <= pmax, and
    runs of consecutive slopes for two fibres and more.
    """
    slopes = fibre_slopes(pmax)
    fibre_lists: List[Tuple[Slope, ...]] = [()]
    fibre_lists.extend((s,) for s in slopes if max_fibres >= 1)
    for n in range(2, max_fibres + 1):
        fibre_lists.extend(tuple(slopes[i : i + n]) for i in range(0, len(slopes) - n + 1, n))
    kinds = [True] if orientable_only else [True, False]
    for orientable in kinds:
        for b in range(1, b_max + 1):
            a = 0 if orientable else 1
            while 2 - a - b >= chi_min:
                for fibres in fibre_lists:
                    yield SeifertData(orientable, a, b, fibres)
                a += 2 if orientable else 1
