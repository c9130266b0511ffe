"""Alphabets, words, permutations, morphisms, and repetition checkers.

Letters are nonnegative integers below an alphabet size ``m`` and are stored
as single bytes, so alphabets are limited to 256 letters.  Words over
alphabets of at most ten letters render as digit strings ("012021..."); for
larger alphabets a comma-separated numeric form is used instead.

Everything here is an immutable value after construction and every operation
is a pure function, so objects can be shared between concurrent workers
without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

__all__ = [
    "MAX_ALPHABET",
    "TEXT_ALPHABET_MAX",
    "Word",
    "Permutation",
    "Morphism",
    "THUE_MORSE_MORPHISM",
    "TERNARY_THUE_MORPHISM",
    "thue_morse_prefix",
    "ternary_thue_prefix",
    "as_letters",
    "is_square_free",
    "is_cube_free",
    "is_overlap_free",
    "is_four_power_free",
]

MAX_ALPHABET = 256
TEXT_ALPHABET_MAX = 10

WordLike = Union["Word", bytes, bytearray, str, Sequence[int]]


def parse_letters(text: str) -> bytes:
    """Parse a word from digit text ("0120") or delimited form ("0,12,3")."""
    text = text.strip()
    if not text:
        return b""
    if "," in text:
        return bytes(int(part) for part in text.split(","))
    return bytes(int(ch) for ch in text)


def format_letters(letters: bytes, alphabet: int) -> str:
    """Render letters as digits for small alphabets, commas otherwise."""
    if alphabet <= TEXT_ALPHABET_MAX:
        return "".join(str(a) for a in letters)
    return ",".join(str(a) for a in letters)


def as_letters(word: WordLike) -> bytes:
    """Coerce a word-like value (Word, bytes, digit string, int sequence) to bytes."""
    if isinstance(word, Word):
        return word.letters
    if isinstance(word, bytes):
        return word
    if isinstance(word, bytearray):
        return bytes(word)
    if isinstance(word, str):
        return parse_letters(word)
    return bytes(word)


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., alphabet-1}; may be empty."""

    letters: bytes
    alphabet: int

    def __post_init__(self) -> None:
        if not 1 <= self.alphabet <= MAX_ALPHABET:
            raise ValueError(f"alphabet size must be in [1, {MAX_ALPHABET}], got {self.alphabet}")
        if self.letters and max(self.letters) >= self.alphabet:
            raise ValueError(
                f"letter {max(self.letters)} out of range for alphabet of size {self.alphabet}"
            )

    @classmethod
    def parse(cls, text: str, alphabet: int | None = None) -> "Word":
        letters = parse_letters(text)
        if alphabet is None:
            alphabet = (max(letters) + 1) if letters else 1
        return cls(letters, alphabet)

    def text(self) -> str:
        return format_letters(self.letters, self.alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.alphabet)
        return self.letters[index]

    def __add__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.alphabet)

    def __repr__(self) -> str:
        return f"Word({self.text()!r}, alphabet={self.alphabet})"


class Permutation:
    """A bijection on {0, ..., m-1}, extended letterwise to words."""

    __slots__ = ("images", "_order", "_power_images", "_tables")

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(a) for a in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"images {imgs} are not a bijection on 0..{len(imgs) - 1}")
        if len(imgs) > MAX_ALPHABET:
            raise ValueError("alphabet too large")
        self.images = imgs
        self._order: int | None = None
        self._power_images: list[tuple[int, ...]] | None = None
        self._tables: tuple[bytes, ...] | None = None

    @staticmethod
    def identity(m: int) -> "Permutation":
        return Permutation(range(m))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], m: int) -> "Permutation":
        images = list(range(m))
        for cycle in cycles:
            for pos, a in enumerate(cycle):
                images[a] = cycle[(pos + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycle decomposition, including fixed points as 1-cycles."""
        seen: set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cycle))
        return tuple(out)

    @property
    def order(self) -> int:
        """Least n > 0 with the n-th power equal to the identity."""
        if self._order is None:
            self._order = math.lcm(*(len(c) for c in self.cycles())) if self.degree else 1
        return self._order

    def letter_order(self, a: int) -> int:
        """Orbit length of letter ``a``: least n > 0 with f^n(a) = a."""
        if not 0 <= a < self.degree:
            raise ValueError(f"letter {a} outside alphabet of size {self.degree}")
        n = 1
        b = self.images[a]
        while b != a:
            b = self.images[b]
            n += 1
        return n

    def power_images(self) -> list[tuple[int, ...]]:
        """Image tuples of f^0, f^1, ..., f^(order-1)."""
        if self._power_images is None:
            powers = [tuple(range(self.degree))]
            for _ in range(self.order - 1):
                prev = powers[-1]
                powers.append(tuple(self.images[a] for a in prev))
            self._power_images = powers
        return self._power_images

    def power_tables(self) -> tuple[bytes, ...]:
        """256-byte translation tables for f^0 ... f^(order-1)."""
        if self._tables is None:
            tables = []
            for imgs in self.power_images():
                table = bytearray(range(256))
                for a, b in enumerate(imgs):
                    table[a] = b
                tables.append(bytes(table))
            self._tables = tuple(tables)
        return self._tables

    def power(self, n: int) -> "Permutation":
        """The n-th power; exponents are reduced mod the order, so huge n is cheap."""
        if n < 0:
            raise ValueError("exponent must be nonnegative")
        return Permutation(self.power_images()[n % self.order])

    def apply(self, word: Word) -> Word:
        if word.alphabet != self.degree:
            raise ValueError(
                f"word alphabet {word.alphabet} does not match permutation degree {self.degree}"
            )
        return Word(word.letters.translate(self.power_tables()[1 % self.order]), word.alphabet)

    def apply_letters(self, letters: bytes) -> bytes:
        return letters.translate(self.power_tables()[1 % self.order])

    def __call__(self, x):
        if isinstance(x, int):
            return self.images[x]
        if isinstance(x, Word):
            return self.apply(x)
        return self.apply_letters(as_letters(x))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


class Morphism:
    """A map letter -> nonempty word, extended to words by concatenation."""

    __slots__ = ("images", "source_alphabet", "target_alphabet")

    def __init__(
        self,
        images: Mapping[int, WordLike] | Sequence[WordLike],
        target_alphabet: int | None = None,
    ):
        if isinstance(images, Mapping):
            pairs = {int(k): as_letters(v) for k, v in images.items()}
        else:
            pairs = {a: as_letters(v) for a, v in enumerate(images)}
        source = len(pairs)
        if sorted(pairs) != list(range(source)) or source == 0:
            raise ValueError("images must be given for every letter 0..m-1 of the source alphabet")
        for a, img in pairs.items():
            if not img:
                raise ValueError(f"image of letter {a} is empty")
        if target_alphabet is None:
            target_alphabet = max(max(img) for img in pairs.values()) + 1
        self.images = tuple(pairs[a] for a in range(source))
        self.source_alphabet = source
        self.target_alphabet = target_alphabet
        if any(max(img) >= target_alphabet for img in self.images):
            raise ValueError("image letter out of range for the target alphabet")

    def image(self, a: int) -> bytes:
        if not 0 <= a < self.source_alphabet:
            raise ValueError(f"letter {a} undefined for this morphism")
        return self.images[a]

    def apply_letters(self, letters: bytes) -> bytes:
        images = self.images
        try:
            return b"".join(images[a] for a in letters)
        except IndexError:
            bad = next(a for a in letters if a >= self.source_alphabet)
            raise ValueError(f"letter {bad} undefined for this morphism") from None

    def apply(self, word: WordLike) -> Word:
        return Word(self.apply_letters(as_letters(word)), self.target_alphabet)

    def __call__(self, word: WordLike) -> Word:
        return self.apply(word)

    def is_prolongable(self, seed: int) -> bool:
        """True if image(seed) starts with seed and has length at least two."""
        img = self.image(seed)
        return len(img) >= 2 and img[0] == seed

    def fixed_point_prefix(self, seed: int, length: int) -> Word:
        """Length-``length`` prefix of the fixed point obtained by iterating from ``seed``."""
        if length < 1:
            raise ValueError("length must be positive")
        if not self.is_prolongable(seed):
            raise ValueError(f"morphism is not prolongable on seed {seed}")
        current = bytes([seed])
        while len(current) < length:
            grown = self.apply_letters(current)
            if len(grown) <= len(current):
                raise ValueError("morphism does not expand; fixed point prefix unreachable")
            current = grown
        return Word(current[:length], self.target_alphabet)

    def to_json_dict(self) -> dict[str, str]:
        return {
            str(a): format_letters(self.images[a], self.target_alphabet)
            for a in range(self.source_alphabet)
        }

    @classmethod
    def from_json_dict(
        cls, data: Mapping[str, str], target_alphabet: int | None = None
    ) -> "Morphism":
        return cls({int(k): parse_letters(str(v)) for k, v in data.items()}, target_alphabet)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.images == other.images
            and self.target_alphabet == other.target_alphabet
        )

    def __hash__(self) -> int:
        return hash((self.images, self.target_alphabet))

    def __repr__(self) -> str:
        return f"Morphism({self.to_json_dict()})"


THUE_MORSE_MORPHISM = Morphism({0: "01", 1: "10"})
TERNARY_THUE_MORPHISM = Morphism({0: "012", 1: "02", 2: "1"})


def thue_morse_prefix(length: int) -> Word:
    """Prefix of the Thue-Morse word, the fixed point of 0 -> 01, 1 -> 10."""
    return THUE_MORSE_MORPHISM.fixed_point_prefix(0, length)


def ternary_thue_prefix(length: int) -> Word:
    """Prefix of the ternary Thue word, the fixed point of 0 -> 012, 1 -> 02, 2 -> 1."""
    return TERNARY_THUE_MORPHISM.fixed_point_prefix(0, length)


# ---------------------------------------------------------------------------
# Repetition checkers.
#
# The "scan" method is the definitional factor scan and serves as the oracle;
# the "runs" method reduces each period to a longest-run computation over a
# shift-equality mask and is validated against the scan in the test suite.
# ---------------------------------------------------------------------------


def _longest_true_run(mask: np.ndarray) -> int:
    if mask.size == 0 or not mask.any():
        return 0
    if mask.all():
        return int(mask.size)
    false_at = np.flatnonzero(~mask)
    gaps = np.diff(np.concatenate(([-1], false_at, [mask.size]))) - 1
    return int(gaps.max())


def _power_free_runs(letters: bytes, copies: int) -> bool:
    data = np.frombuffer(letters, dtype=np.uint8)
    n = data.size
    for b in range(1, n // copies + 1):
        # a run of r shift-b equalities starting at s gives w[s:s+b+r] period b
        if _longest_true_run(data[:-b] == data[b:]) >= (copies - 1) * b:
            return False
    return True


def _overlap_free_runs(letters: bytes) -> bool:
    data = np.frombuffer(letters, dtype=np.uint8)
    n = data.size
    for b in range(1, (n - 1) // 2 + 1):
        if _longest_true_run(data[:-b] == data[b:]) >= b + 1:
            return False
    return True


def _power_free_scan(w: bytes, copies: int) -> bool:
    n = len(w)
    for s in range(n):
        for b in range(1, (n - s) // copies + 1):
            if w[s] != w[s + b]:
                continue
            if all(w[s + t * b : s + (t + 1) * b] == w[s : s + b] for t in range(1, copies)):
                return False
    return True


def _overlap_free_scan(w: bytes) -> bool:
    n = len(w)
    for s in range(n):
        for b in range(1, (n - s - 1) // 2 + 1):
            if w[s] == w[s + b] and w[s : s + b + 1] == w[s + b : s + 2 * b + 1]:
                return False
    return True


_SCAN_CUTOFF = 400


def _check(word: WordLike, method: str, scan, runs) -> bool:
    letters = as_letters(word)
    if method == "scan":
        return scan(letters)
    if method == "runs":
        return runs(letters)
    if method == "auto":
        return scan(letters) if len(letters) <= _SCAN_CUTOFF else runs(letters)
    raise ValueError(f"unknown method {method!r}; expected 'auto', 'scan' or 'runs'")


def is_square_free(word: WordLike, method: str = "auto") -> bool:
    """True iff no factor uu with u nonempty occurs."""
    return _check(word, method, lambda w: _power_free_scan(w, 2), lambda w: _power_free_runs(w, 2))


def is_cube_free(word: WordLike, method: str = "auto") -> bool:
    """True iff no factor uuu with u nonempty occurs."""
    return _check(word, method, lambda w: _power_free_scan(w, 3), lambda w: _power_free_runs(w, 3))


def is_four_power_free(word: WordLike, method: str = "auto") -> bool:
    """True iff no factor uuuu with u nonempty occurs."""
    return _check(word, method, lambda w: _power_free_scan(w, 4), lambda w: _power_free_runs(w, 4))


def is_overlap_free(word: WordLike, method: str = "auto") -> bool:
    """True iff no factor of the form a v a v a (a a letter, v possibly empty) occurs."""
    return _check(word, method, _overlap_free_scan, _overlap_free_runs)
