"""Graev norm over a finite pointed rational metric space.

The norm of a reduced word is the minimum, over non-crossing matches of
its letter positions, of the summed costs in the rho-extension of the
space (fixed letters pay their distance to the basepoint, an opener pays
the distance to its partner's inverse, closers are free).  The minimum
is computed by an interval dynamic program; a brute-force enumeration of
all matches serves as the independent oracle in tests.

All arithmetic is exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .utils import parse_fraction, format_fraction
from .words import Word, inverse, multiply, reduce

BASEPOINT = 0  # rho-table index for the distinguished point "1"

MATCH_ENUMERATION_CAP = 10


class InvalidSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class PointedSpace:
    """Finite pointed rational metric space.

    Non-basepoint points are numbered 1..n in the order given; that
    numbering is the generator numbering of the free group the Graev
    norm lives on.
    """

    names: Tuple[str, ...]  # names[0] is the basepoint, conventionally "1"
    table: Dict[Tuple[int, int], Fraction] = field(hash=False)

    @staticmethod
    def build(
        point_names: Sequence[str], distances: Dict[Tuple[str, str], Fraction]
    ) -> "PointedSpace":
        if "1" not in point_names:
            raise InvalidSpaceError("a pointed space needs the basepoint '1'")
        names = ("1",) + tuple(n for n in point_names if n != "1")
        idx = {n: i for i, n in enumerate(names)}
        table: Dict[Tuple[int, int], Fraction] = {}
        for (p, q), v in distances.items():
            if p not in idx or q not in idx:
                raise InvalidSpaceError(f"distance given for unknown point {p!r}/{q!r}")
            i, j = idx[p], idx[q]
            for key in ((i, j), (j, i)):
                if key in table and table[key] != v:
                    raise InvalidSpaceError(f"conflicting distances for {p!r},{q!r}")
                table[key] = Fraction(v)
        for i in range(len(names)):
            table.setdefault((i, i), Fraction(0))
        space = PointedSpace(names, table)
        space.check()
        return space

    @property
    def rank(self) -> int:
        return len(self.names) - 1

    def d(self, i: int, j: int) -> Fraction:
        try:
            return self.table[(i, j)]
        except KeyError:
            raise InvalidSpaceError(
                f"missing distance {self.names[i]!r},{self.names[j]!r}"
            ) from None

    def check(self) -> None:
        """Metric axioms by direct scan; raises InvalidSpaceError."""
        n = len(self.names)
        for i in range(n):
            if self.d(i, i) != 0:
                raise InvalidSpaceError(f"nonzero diagonal at {self.names[i]!r}")
        for i, j in combinations(range(n), 2):
            if self.d(i, j) != self.d(j, i):
                raise InvalidSpaceError("asymmetric table")
            if self.d(i, j) <= 0:
                raise InvalidSpaceError(
                    f"non-positive distance {self.names[i]!r},{self.names[j]!r}"
                )
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.d(i, j) > self.d(i, k) + self.d(k, j):
                        raise InvalidSpaceError(
                            "triangle inequality fails at "
                            f"({self.names[i]!r},{self.names[j]!r},{self.names[k]!r})"
                        )


@dataclass(frozen=True)
class RhoTable:
    """Extension of a pointed space to formal inverses.

    Entries are addressed by signed point indices (+i for the point,
    -i for its formal inverse, 0 for the basepoint).
    """

    space: PointedSpace

    def rho(self, x: int, y: int) -> Fraction:
        if x == y:
            return Fraction(0)
        if x == BASEPOINT or y == BASEPOINT:
            z = y if x == BASEPOINT else x
            return self.space.d(abs(z), 0)
        if (x > 0) == (y > 0):
            return self.space.d(abs(x), abs(y))
        return self.space.d(abs(x), 0) + self.space.d(abs(y), 0)


def rho_extend(space: PointedSpace) -> RhoTable:
    space.check()
    return RhoTable(space)


@dataclass(frozen=True)
class Match:
    """Involution on positions 0..k-1 with no crossing pairs."""

    mapping: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.mapping)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.mapping) if i < j]

    def fixed_points(self) -> List[int]:
        return [i for i, j in enumerate(self.mapping) if i == j]


class MatchCapExceeded(ValueError):
    pass


def enumerate_matches(k: int, cap: int = MATCH_ENUMERATION_CAP) -> List[Match]:
    """All non-crossing matches on {0..k-1}; Motzkin-type growth, so capped."""
    if k > cap:
        raise MatchCapExceeded(f"match enumeration capped at {cap}, got {k}")

    def gen(positions: Tuple[int, ...]) -> List[Dict[int, int]]:
        if not positions:
            return [{}]
        first, rest = positions[0], positions[1:]
        out = []
        for m in gen(rest):
            out.append({first: first, **m})
        for t in range(len(rest)):
            partner = rest[t]
            inner, outer = rest[:t], rest[t + 1 :]
            for mi in gen(inner):
                for mo in gen(outer):
                    out.append({first: partner, partner: first, **mi, **mo})
        return out

    matches = []
    for m in gen(tuple(range(k))):
        matches.append(Match(tuple(m[i] for i in range(k))))
    return matches


def match_cost(letters: Sequence[int], theta: Match, rho: RhoTable) -> Fraction:
    """Sum of rho(w_i, w_i^theta); accepts formal (possibly unreduced) input."""
    if len(letters) != len(theta):
        raise ValueError("word/match size mismatch")
    total = Fraction(0)
    for i, x in enumerate(letters):
        j = theta.mapping[i]
        if j == i:
            total += rho.rho(x, BASEPOINT)
        elif j > i:  # opener pays the pair
            total += rho.rho(x, -letters[j])
        # closers contribute rho(x, x) = 0
    return total


def graev_norm_bruteforce(w: Word, space: PointedSpace) -> Fraction:
    """Minimum match cost by complete enumeration; test oracle for the DP."""
    rho = rho_extend(space)
    _check_alphabet(w, space)
    return min(
        match_cost(w.letters, theta, rho) for theta in enumerate_matches(len(w))
    )


def graev_norm(w: Word, space: PointedSpace) -> Fraction:
    """Graev norm of a reduced word via the interval DP.

    D[i..j] = min( rho(w_i, 1) + D[i+1..j],
                   min over k in (i..j] of rho(w_i, w_k^-1)
                                           + D[i+1..k-1] + D[k+1..j] ).
    """
    rho = rho_extend(space)
    _check_alphabet(w, space)
    return _interval_dp(w.letters, rho)


def _interval_dp(letters: Sequence[int], rho: RhoTable) -> Fraction:
    n = len(letters)
    if n == 0:
        return Fraction(0)
    # D[i][j] over inclusive intervals, D[i][i-1] = 0 handled via lookup
    D = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]

    def get(i: int, j: int) -> Fraction:
        return D[i][j] if i <= j else Fraction(0)

    for length in range(1, n + 1):
        for i in range(0, n - length + 1):
            j = i + length - 1
            best = rho.rho(letters[i], BASEPOINT) + get(i + 1, j)
            for k in range(i + 1, j + 1):
                cand = rho.rho(letters[i], -letters[k]) + get(i + 1, k - 1) + get(
                    k + 1, j
                )
                if cand < best:
                    best = cand
            D[i][j] = best
    return D[0][n - 1]


def graev_dist(u: Word, v: Word, space: PointedSpace) -> Fraction:
    """Bi-invariant reduction: distance(u, v) = norm(u v^-1)."""
    return graev_norm(multiply(u, inverse(v)), space)


def has_exact_cancellation_match(letters: Sequence[int]) -> bool:
    """Whether some match pairs every position with its exact inverse letter.

    Holds for every trivial word obtained by deleting a word against
    itself; exercised as a consistency property in tests.
    """
    for theta in enumerate_matches(len(letters)):
        if all(
            letters[theta.mapping[i]] == -letters[i] and theta.mapping[i] != i
            for i in range(len(letters))
        ):
            return True
    return False


def _check_alphabet(w: Word, space: PointedSpace) -> None:
    if w.max_index() > space.rank:
        raise InvalidSpaceError(
            f"word uses generator {w.max_index()} but the space has rank {space.rank}"
        )


# -- text format -------------------------------------------------------------
#
#   space
#   point <name>        (one line per point; basepoint named 1)
#   d <name> <name> <p/q>


def parse_space(text: str) -> PointedSpace:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "space":
        raise InvalidSpaceError("pointed-space file must start with 'space'")
    names: List[str] = []
    distances: Dict[Tuple[str, str], Fraction] = {}
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if parts[0] == "point" and len(parts) == 2:
            names.append(parts[1])
        elif parts[0] == "d" and len(parts) == 4:
            distances[(parts[1], parts[2])] = parse_fraction(parts[3])
        else:
            raise InvalidSpaceError(f"line {lineno}: cannot parse {ln!r}")
    return PointedSpace.build(names, distances)


def format_space(space: PointedSpace) -> str:
    lines = ["space"]
    lines += [f"point {name}" for name in space.names]
    n = len(space.names)
    for i, j in combinations(range(n), 2):
        lines.append(
            f"d {space.names[i]} {space.names[j]} {format_fraction(space.d(i, j))}"
        )
    return "\n".join(lines) + "\n"
