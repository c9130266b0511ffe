"""Divisibility parameters alpha_1..alpha_14 for exponent triples (i, j, k).

For the pattern x f^i(x) f^j(x) f^k(x), the four x-items carry the exponents
(0, i, j, k).  When the first letter of x lies on an orbit of length t, two
x-items receive equal images exactly when their exponents are congruent
mod t.  Reading the residues of (0, i, j, k) mod t in order of first
occurrence gives a canonical 4-digit equality pattern such as "0012" (first
two items equal, the rest pairwise distinct).

alpha_a is the least orbit length t at which the equality pattern equals the
a-th canonical representation, or infinity when no t achieves it.  Any
divisibility condition t | x with x != 0 bounds t by x, and every t larger
than all of i, j, k and their pairwise differences produces the same pattern
as t = bound + 1, so a scan up to that bound decides finiteness exactly.
The convention t | 0 for every t >= 1 is used throughout (so items with
equal exponents can never be assigned distinct digits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Sequence

from .words import WordLike, as_letters

__all__ = [
    "INFINITY",
    "ALPHA_INDICES",
    "REPRESENTATIONS",
    "ALL_PATTERNS",
    "ALL_EQUAL",
    "PatternExponents",
    "AlphaProfile",
    "canonical_pattern",
    "blocks_pattern",
    "is_canonical_pattern",
    "representation",
    "alpha_value",
    "alpha_scan_bound",
    "profile",
    "realizable",
    "models",
    "is_swapped_form",
    "has_prefix_square",
    "has_suffix_square",
    "has_gapped_square",
    "has_two_gapped_squares",
    "contains_cube",
    "has_two_squares",
    "contains_gapped_cube",
    "has_middle_square",
    "alpha_json_value",
]

INFINITY = math.inf

ALPHA_INDICES = range(1, 15)

#: Canonical equality representation of each parameter alpha_a.
REPRESENTATIONS: dict[int, str] = {
    1: "0123",
    2: "0012",
    3: "0102",
    4: "0121",
    5: "0122",
    6: "0001",
    7: "0010",
    8: "0100",
    9: "0111",
    10: "0011",
    11: "0101",
    12: "0110",
    13: "0112",
    14: "0120",
}

#: Every canonical 4-digit equality pattern (the 15 set partitions of 4 items).
ALL_PATTERNS: tuple[str, ...] = (
    "0000",
    "0001",
    "0010",
    "0011",
    "0012",
    "0100",
    "0101",
    "0102",
    "0110",
    "0111",
    "0112",
    "0120",
    "0121",
    "0122",
    "0123",
)

#: The all-equal pattern; four equal blocks form a 4-power u u u u.
ALL_EQUAL = "0000"


def canonical_pattern(items: Sequence[Hashable]) -> str:
    """Digit pattern of ``items`` with digits assigned in order of first occurrence."""
    labels: dict[Hashable, int] = {}
    out = []
    for item in items:
        if item not in labels:
            labels[item] = len(labels)
        out.append(labels[item])
    return "".join(str(d) for d in out)


def _pattern_equality_key(pattern: str) -> tuple[bool, ...]:
    d = pattern
    return (d[0] == d[1], d[0] == d[2], d[0] == d[3], d[1] == d[2], d[1] == d[3], d[2] == d[3])


_PATTERN_FROM_EQ: dict[tuple[bool, ...], str] = {
    _pattern_equality_key(p): p for p in ALL_PATTERNS
}


def blocks_pattern(b0, b1, b2, b3) -> str:
    """Canonical equality pattern of four blocks, via their pairwise equalities."""
    return _PATTERN_FROM_EQ[
        (b0 == b1, b0 == b2, b0 == b3, b1 == b2, b1 == b3, b2 == b3)
    ]


def is_canonical_pattern(pattern: str) -> bool:
    return pattern in _CANONICAL_SET


_CANONICAL_SET = frozenset(ALL_PATTERNS)


def _require_canonical(pattern: str) -> str:
    if pattern not in _CANONICAL_SET:
        raise ValueError(f"{pattern!r} is not a canonical 4-digit equality pattern")
    return pattern


@dataclass(frozen=True)
class PatternExponents:
    """Exponents (i, j, k) of the pattern x f^i(x) f^j(x) f^k(x)."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if min(self.i, self.j, self.k) < 0:
            raise ValueError("exponents must be nonnegative")

    @property
    def items(self) -> tuple[int, int, int, int]:
        """Exponents of the four x-items, including the leading implicit 0."""
        return (0, self.i, self.j, self.k)

    @property
    def is_valid_for_sigma(self) -> bool:
        """True when i, j, k are positive and pairwise distinct."""
        return (
            self.i >= 1
            and self.j >= 1
            and self.k >= 1
            and self.i != self.j
            and self.j != self.k
            and self.i != self.k
        )

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)


def _exponents(e) -> PatternExponents:
    if isinstance(e, PatternExponents):
        return e
    i, j, k = e
    return PatternExponents(i, j, k)


def representation(t: int, e) -> str:
    """Equality pattern of the residues of (0, i, j, k) mod t."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    exp = _exponents(e)
    return canonical_pattern((0, exp.i % t, exp.j % t, exp.k % t))


def alpha_scan_bound(e) -> int:
    """Scanning t = 1 .. bound decides every alpha value exactly."""
    exp = _exponents(e)
    i, j, k = exp.i, exp.j, exp.k
    return max(i, j, k, abs(i - j), abs(i - k), abs(j - k)) + 1


def alpha_value(a: int, e) -> int | float:
    """Least t >= 1 whose residue pattern is REPRESENTATIONS[a], else infinity."""
    if a not in REPRESENTATIONS:
        raise ValueError(f"alpha index must be in 1..14, got {a}")
    exp = _exponents(e)
    target = REPRESENTATIONS[a]
    for t in range(1, alpha_scan_bound(exp) + 1):
        if representation(t, exp) == target:
            return t
    return INFINITY


@dataclass(frozen=True)
class AlphaProfile:
    """All fourteen alpha values for one exponent triple, plus their representations."""

    exponents: PatternExponents
    values: tuple[int | float, ...]  # values[a - 1] is alpha_a

    reps = REPRESENTATIONS

    def value(self, a: int) -> int | float:
        if a not in REPRESENTATIONS:
            raise ValueError(f"alpha index must be in 1..14, got {a}")
        return self.values[a - 1]

    def rep(self, a: int) -> str:
        return REPRESENTATIONS[a]

    def finite_indices(self) -> tuple[int, ...]:
        return tuple(a for a in ALPHA_INDICES if self.values[a - 1] is not INFINITY)

    def as_json(self) -> dict:
        return {
            "exponents": {"i": self.exponents.i, "j": self.exponents.j, "k": self.exponents.k},
            "alphas": {f"alpha{a}": alpha_json_value(self.value(a)) for a in ALPHA_INDICES},
            "representations": {f"alpha{a}": REPRESENTATIONS[a] for a in ALPHA_INDICES},
        }


@lru_cache(maxsize=65536)
def _profile_cached(i: int, j: int, k: int) -> AlphaProfile:
    exp = PatternExponents(i, j, k)
    bound = alpha_scan_bound(exp)
    first_seen: dict[str, int] = {}
    for t in range(1, bound + 1):
        pattern = representation(t, exp)
        first_seen.setdefault(pattern, t)
    values = tuple(
        first_seen.get(REPRESENTATIONS[a], INFINITY) for a in ALPHA_INDICES
    )
    return AlphaProfile(exp, values)


def profile(e) -> AlphaProfile:
    exp = _exponents(e)
    return _profile_cached(exp.i, exp.j, exp.k)


def realizable(a: int, e, m: int) -> bool:
    """True iff some word and permutation of {0..m-1} realize representation a.

    Equivalent to alpha_a <= m: an orbit of length alpha_a fits in the
    alphabet exactly when m is at least alpha_a.
    """
    if m < 2:
        raise ValueError("alphabet size must be at least 2")
    return alpha_value(a, e) <= m


def models(u: WordLike, v1: WordLike, v2: WordLike, v3: WordLike, pattern: str) -> bool:
    """True iff block equalities match digit equalities exactly, both ways."""
    _require_canonical(pattern)
    blocks = tuple(as_letters(w) for w in (u, v1, v2, v3))
    if len({len(b) for b in blocks}) != 1:
        raise ValueError("all four blocks must have the same length")
    return blocks_pattern(*blocks) == pattern


def is_swapped_form(p1: str, p2: str) -> bool:
    """True iff exchanging one adjacent pair of positions turns p1 into p2."""
    if len(p1) != 4 or len(p2) != 4:
        raise ValueError("swapped forms are defined for 4-digit patterns")
    for pos in range(3):
        swapped = p1[:pos] + p1[pos + 1] + p1[pos] + p1[pos + 2 :]
        if swapped == p2:
            return True
    return False


# ---------------------------------------------------------------------------
# Structural classifiers of canonical representations.
# ---------------------------------------------------------------------------


def has_prefix_square(pattern: str) -> bool:
    """Starts with two equal digits while the remaining digits are 1 and 2."""
    p = _require_canonical(pattern)
    return p[0] == p[1] and {p[2], p[3]} == {"1", "2"}


def has_suffix_square(pattern: str) -> bool:
    """Ends with "22" while the first two digits are 0 and 1."""
    p = _require_canonical(pattern)
    return p[2] == p[3] == "2" and {p[0], p[1]} == {"0", "1"}


def has_gapped_square(pattern: str) -> bool:
    """Exactly 0102 (the 0s gapped) or 0121 (the 1s gapped)."""
    return _require_canonical(pattern) in ("0102", "0121")


def has_two_gapped_squares(pattern: str) -> bool:
    """Exactly 0101: both digit pairs are gapped."""
    return _require_canonical(pattern) == "0101"


def contains_cube(pattern: str) -> bool:
    """Exactly 0001 or 0111: three equal digits in a row."""
    return _require_canonical(pattern) in ("0001", "0111")


def has_two_squares(pattern: str) -> bool:
    """Exactly 0011."""
    return _require_canonical(pattern) == "0011"


def contains_gapped_cube(pattern: str) -> bool:
    """Exactly 0010 or 0100: three equal digits, one of them separated."""
    return _require_canonical(pattern) in ("0010", "0100")


def has_middle_square(pattern: str) -> bool:
    """The two middle digits are equal and differ from both outer digits."""
    p = _require_canonical(pattern)
    return p[1] == p[2] and p[0] != p[1] and p[3] != p[1]


def alpha_json_value(value: int | float) -> int | str:
    """JSON rendering of an alpha value; infinity serializes as "inf"."""
    return "inf" if value == INFINITY else int(value)


def _self_check() -> None:
    # Guards against transcription slips in REPRESENTATIONS: whenever an alpha
    # value is finite, the residue pattern at that value must reproduce the
    # stored representation.
    for triple in ((1, 2, 3), (2, 4, 5), (3, 7, 6)):
        prof = profile(triple)
        for a in ALPHA_INDICES:
            value = prof.value(a)
            if value is not INFINITY:
                assert representation(int(value), triple) == REPRESENTATIONS[a]


_self_check()
