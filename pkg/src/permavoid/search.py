"""Backtracking search for long words avoiding forbidden instance structures.

A factor u v1 v2 v3 (four blocks of equal length) is a forbidden instance
when a single permutation f from the configured model maps u onto every
block by some positive power, and the equality pattern of the four blocks is
in the forbidden set.  In abstract mode the powers range freely over
1..order(f) (powers repeat with period order(f), so this is exhaustive); in
fixed mode the three powers are the configured exponents.

The set of blocks reachable from u under powers of f determines everything:
whichever exponent witnesses a block does not change the block, so the
equality pattern is computed from the blocks directly and the permutation
check only decides whether the factor is an instance at all.

``longest_avoiding_word`` grows words depth-first, one letter at a time,
killing a branch as soon as the new letter completes a forbidden suffix.
Candidate letters are the letters already used plus one fresh letter, and
the first letter is fixed to 0; this canonical-form pruning is sound because
the forbidden relation is invariant under renaming the alphabet (all three
permutation models are closed under conjugation).
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _all_permutations
from typing import Iterable

from .alphas import ALL_EQUAL, REPRESENTATIONS, blocks_pattern, is_canonical_pattern
from .words import Permutation, Word, WordLike, as_letters

__all__ = [
    "PermModel",
    "SearchConfig",
    "InstanceWitness",
    "SearchResult",
    "model_permutations",
    "forbidden_patterns",
    "suffix_instance",
    "verify_word_avoids",
    "longest_avoiding_word",
]

logger = logging.getLogger(__name__)

_PROGRESS_EVERY = 1_000_000


class PermModel(enum.Enum):
    """Which permutations may substitute the function variable."""

    FULL_CYCLE = "cycle"
    FIX_ONE_POINT_CYCLE = "fixcycle"
    ALL_PERMUTATIONS = "all"


def model_permutations(model: PermModel, m: int) -> tuple[Permutation, ...]:
    """Every permutation of {0..m-1} belonging to the model."""
    if m < 2:
        raise ValueError("alphabet size must be at least 2")
    if model is PermModel.FULL_CYCLE:
        perms = []
        for rest in _all_permutations(range(1, m)):
            cycle = (0,) + rest
            perms.append(Permutation.from_cycles([cycle], m))
        return tuple(perms)
    if model is PermModel.FIX_ONE_POINT_CYCLE:
        if m < 3:
            raise ValueError("fix-one-point cycles need an alphabet of size at least 3")
        perms = []
        for fixed in range(m):
            others = [a for a in range(m) if a != fixed]
            for rest in _all_permutations(others[1:]):
                cycle = (others[0],) + rest
                perms.append(Permutation.from_cycles([cycle], m))
        return tuple(perms)
    if model is PermModel.ALL_PERMUTATIONS:
        return tuple(Permutation(images) for images in _all_permutations(range(m)))
    raise ValueError(f"unknown permutation model {model!r}")


#: Gapped-square representations and their completion: in 0101 both gapped
#: pairs coincide at once, so a factor of that shape still carries the gapped
#: square of 0102 (positions 0 and 2 equal) or of 0121 (positions 1 and 3).
_GAPPED_SQUARE_REPS = frozenset({"0102", "0121"})
_TWO_GAPPED_SQUARES = "0101"


def forbidden_patterns(
    params: Iterable[int],
    include_all_equal: bool = True,
    gapped_square_completion: bool = True,
) -> frozenset[str]:
    """Equality patterns forbidden for a parameter index set.

    Two closure rules apply by default.  Four equal blocks form a 4-power
    u u u u, which is an instance of the pattern for every choice of
    exponents (take powers that fix u), so the all-equal pattern is forbidden
    alongside the representations.  And when the set carries a gapped-square
    representation, the two-gapped-squares pattern 0101 is forbidden as well:
    a factor u v u v whose halves are power-related exhibits the gapped
    square on both position pairs simultaneously, and letting it escape the
    ban because of the extra coincidence would lengthen the search's maximal
    words beyond the values the avoidance bounds rest on.
    """
    patterns = {REPRESENTATIONS[a] for a in params}
    if include_all_equal:
        patterns.add(ALL_EQUAL)
    if gapped_square_completion and patterns & _GAPPED_SQUARE_REPS:
        patterns.add(_TWO_GAPPED_SQUARES)
    return frozenset(patterns)


@dataclass(frozen=True)
class SearchConfig:
    """Alphabet, forbidden equality patterns, permutation model, and caps."""

    alphabet: int
    forbidden: frozenset[str]
    model: PermModel = PermModel.ALL_PERMUTATIONS
    exponents: tuple[int, int, int] | None = None  # None means abstract mode
    length_cap: int = 400
    node_budget: int = 100_000_000

    def __post_init__(self) -> None:
        if self.alphabet < 2:
            raise ValueError("alphabet size must be at least 2")
        if not self.forbidden:
            raise ValueError("forbidden set must be nonempty")
        for pattern in self.forbidden:
            if not is_canonical_pattern(pattern):
                raise ValueError(f"{pattern!r} is not a canonical equality pattern")
        if self.exponents is not None and min(self.exponents) < 1:
            raise ValueError("fixed exponents must be positive")
        if self.length_cap < 1 or self.node_budget < 1:
            raise ValueError("caps must be positive")

    @classmethod
    def for_params(
        cls,
        alphabet: int,
        params: Iterable[int],
        model: PermModel = PermModel.ALL_PERMUTATIONS,
        exponents: tuple[int, int, int] | None = None,
        include_all_equal: bool = True,
        gapped_square_completion: bool = True,
        length_cap: int = 400,
        node_budget: int = 100_000_000,
    ) -> "SearchConfig":
        return cls(
            alphabet=alphabet,
            forbidden=forbidden_patterns(params, include_all_equal, gapped_square_completion),
            model=model,
            exponents=exponents,
            length_cap=length_cap,
            node_budget=node_budget,
        )

    @property
    def abstract(self) -> bool:
        return self.exponents is None


@dataclass(frozen=True)
class InstanceWitness:
    """A forbidden instance located inside a word."""

    start: int
    block_length: int
    blocks: tuple[bytes, bytes, bytes, bytes]
    permutation: Permutation
    exponents: tuple[int, int, int]
    pattern: str

    def factor(self) -> bytes:
        return b"".join(self.blocks)

    def as_json(self) -> dict:
        return {
            "start": self.start,
            "block_length": self.block_length,
            "blocks": ["".join(str(a) for a in blk) for blk in self.blocks],
            "permutation": list(self.permutation.images),
            "exponents": list(self.exponents),
            "pattern": self.pattern,
        }


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a backtracking run."""

    max_length_found: int
    witness_word: Word
    exhausted: bool
    nodes_visited: int

    def as_json(self) -> dict:
        return {
            "max_length_found": self.max_length_found,
            "witness_word": self.witness_word.text(),
            "exhausted": self.exhausted,
            "nodes_visited": self.nodes_visited,
        }


class _CompiledModel:
    """Per-permutation power translation tables, shared across a search."""

    __slots__ = ("perms", "tables", "orders")

    def __init__(self, model: PermModel, m: int):
        self.perms = model_permutations(model, m)
        self.tables = [p.power_tables() for p in self.perms]
        self.orders = [p.order for p in self.perms]


@lru_cache(maxsize=64)
def _compiled(model: PermModel, m: int) -> _CompiledModel:
    return _CompiledModel(model, m)


def _match_abstract(compiled: _CompiledModel, u: bytes, v1: bytes, v2: bytes, v3: bytes):
    """First (perm index, exponents) mapping u onto every block by powers, or None."""
    for idx, tables in enumerate(compiled.tables):
        order = compiled.orders[idx]
        exponents = []
        for v in (v1, v2, v3):
            for d in range(order):
                if v == u.translate(tables[d]):
                    exponents.append(d if d >= 1 else order)
                    break
            else:
                break
        if len(exponents) == 3:
            return idx, tuple(exponents)
    return None


def _match_fixed(
    compiled: _CompiledModel, u: bytes, v1: bytes, v2: bytes, v3: bytes, exponents: tuple[int, int, int]
):
    for idx, tables in enumerate(compiled.tables):
        order = compiled.orders[idx]
        if (
            v1 == u.translate(tables[exponents[0] % order])
            and v2 == u.translate(tables[exponents[1] % order])
            and v3 == u.translate(tables[exponents[2] % order])
        ):
            return idx, exponents
    return None


def _suffix_witness(w: bytes, end: int, config: SearchConfig, compiled: _CompiledModel, max_block: int):
    """Witness among block splits of suffixes of w[:end], or None."""
    forbidden = config.forbidden
    top = min(end // 4, max_block)
    for b in range(1, top + 1):
        s = end - 4 * b
        u = w[s : s + b]
        v1 = w[s + b : s + 2 * b]
        v2 = w[s + 2 * b : s + 3 * b]
        v3 = w[s + 3 * b : s + 4 * b]
        pattern = blocks_pattern(u, v1, v2, v3)
        if pattern not in forbidden:
            continue
        if config.abstract:
            hit = _match_abstract(compiled, u, v1, v2, v3)
        else:
            hit = _match_fixed(compiled, u, v1, v2, v3, config.exponents)
        if hit is not None:
            idx, exponents = hit
            return InstanceWitness(
                start=s,
                block_length=b,
                blocks=(u, v1, v2, v3),
                permutation=compiled.perms[idx],
                exponents=exponents,
                pattern=pattern,
            )
    return None


def suffix_instance(word: WordLike, config: SearchConfig) -> InstanceWitness | None:
    """First forbidden instance that is a suffix of the word, over all block lengths."""
    w = as_letters(word)
    compiled = _compiled(config.model, config.alphabet)
    return _suffix_witness(w, len(w), config, compiled, len(w))


def verify_word_avoids(
    word: WordLike, config: SearchConfig, max_block: int | None = None
) -> InstanceWitness | None:
    """First forbidden instance anywhere in the word, or None if it avoids them all.

    Scans suffixes of every prefix in increasing length, so the result agrees
    with running :func:`suffix_instance` on each prefix in turn.
    """
    w = as_letters(word)
    compiled = _compiled(config.model, config.alphabet)
    limit = max_block if max_block is not None else len(w)
    for end in range(4, len(w) + 1):
        witness = _suffix_witness(w, end, config, compiled, limit)
        if witness is not None:
            return witness
    return None


def longest_avoiding_word(
    config: SearchConfig, prune: bool = True, stop_at_cap: bool = True
) -> SearchResult:
    """Depth-first backtracking for the longest word avoiding the forbidden set.

    Returns exhausted=True only when the whole (pruned) tree was explored
    below the length cap within the node budget.  Hitting the cap means words
    of at least that length exist, which leaves longer words undecided, so
    such runs report exhausted=False.
    """
    m = config.alphabet
    compiled = _compiled(config.model, m)
    cap = config.length_cap
    budget = config.node_budget
    w = bytearray()
    best = b""
    nodes = 0
    budget_hit = False
    cap_hit = False

    # next_letter[d] is the next candidate at position d; high[d] is the
    # largest letter used before position d (fresh letters ascend).
    next_letter = [0]
    high = [-1]
    while next_letter:
        depth = len(next_letter) - 1
        if len(w) > depth:
            w.pop()
        c = next_letter[depth]
        limit = m if not prune else min(m, high[depth] + 2)
        if c >= limit:
            next_letter.pop()
            high.pop()
            continue
        next_letter[depth] = c + 1
        nodes += 1
        if nodes > budget:
            budget_hit = True
            break
        if nodes % _PROGRESS_EVERY == 0:
            logger.debug("search: %d nodes, depth %d, best %d", nodes, depth, len(best))
        w.append(c)
        if _suffix_witness(bytes(w), len(w), config, compiled, len(w)) is not None:
            continue
        if len(w) > len(best):
            best = bytes(w)
        if len(w) >= cap:
            cap_hit = True
            if stop_at_cap:
                break
            continue
        next_letter.append(0)
        high.append(high[depth] if high[depth] >= c else c)

    return SearchResult(
        max_length_found=len(best),
        witness_word=Word(best, m),
        exhausted=not budget_hit and not cap_hit,
        nodes_visited=nodes,
    )
