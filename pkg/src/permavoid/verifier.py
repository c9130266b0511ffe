"""Bounded avoidance certificates on prefixes of morphic words.

A morphic word spec is a prolongable base morphism with a seed, optionally
followed by a letter-to-block coding.  ``verify_prefix_avoids`` generates a
prefix, runs the instance detector over every factor up to a block-length
bound, and issues a certificate that records exactly what was checked; it
never claims more than the stated bounds.

The built-in "h-alpha" spec codes the ternary Thue word letterwise through
three 16-letter images over a five-letter alphabet.  Its prefixes contain no
factor u f^i(u) f^j(u) f^k(u) with short u that is modelled by any of the
parameters alpha_2..alpha_14, and the longest factor containing no complete
coding image is 30 letters, so any block of 31 letters or more covers a full
image.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path

from .alphas import ALPHA_INDICES
from .search import InstanceWitness, PermModel, SearchConfig, _compiled, _suffix_witness
from .words import (
    TERNARY_THUE_MORPHISM,
    THUE_MORSE_MORPHISM,
    Morphism,
    Word,
    is_four_power_free,
)

__all__ = [
    "MorphicWordSpec",
    "AvoidanceCertificate",
    "H_ALPHA_CODING",
    "h_alpha_spec",
    "thue_morse_spec",
    "ternary_thue_spec",
    "builtin_spec",
    "load_spec",
    "h_alpha_prefix",
    "max_gap_without_full_image",
    "verify_prefix_avoids",
    "four_power_free_certificate",
]

#: Letter-to-block coding of the ternary Thue word onto five letters.
H_ALPHA_CODING = Morphism(
    {
        0: "0123041203410234",
        1: "0132403124302134",
        2: "0123402134201324",
    },
    target_alphabet=5,
)


@dataclass(frozen=True)
class MorphicWordSpec:
    """A base fixed point plus an optional letterwise coding."""

    base: Morphism
    seed: int
    coding: Morphism | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if not self.base.is_prolongable(self.seed):
            raise ValueError(f"base morphism is not prolongable on seed {self.seed}")
        if self.coding is not None and self.coding.source_alphabet < self.base.target_alphabet:
            raise ValueError("coding must be defined on every letter of the base alphabet")

    @property
    def target_alphabet(self) -> int:
        return self.coding.target_alphabet if self.coding else self.base.target_alphabet

    def base_prefix_length_for(self, length: int) -> int:
        if self.coding is None:
            return length
        shortest = min(len(img) for img in self.coding.images)
        return -(-length // shortest)

    def generate(self, length: int) -> Word:
        """The length-``length`` prefix of the coded fixed point."""
        if length < 1:
            raise ValueError("length must be positive")
        base_word = self.base.fixed_point_prefix(self.seed, self.base_prefix_length_for(length))
        if self.coding is None:
            return Word(base_word.letters[:length], self.base.target_alphabet)
        coded = self.coding.apply_letters(base_word.letters)
        while len(coded) < length:
            base_word = self.base.fixed_point_prefix(self.seed, 2 * len(base_word))
            coded = self.coding.apply_letters(base_word.letters)
        return Word(coded[:length], self.coding.target_alphabet)

    def complete_image_spans(self, length: int) -> list[tuple[int, int]]:
        """(start, end) of every complete coding image inside the length-L prefix."""
        if self.coding is None:
            raise ValueError("spec has no coding")
        base_word = self.base.fixed_point_prefix(self.seed, self.base_prefix_length_for(length))
        spans = []
        position = 0
        for letter in base_word.letters:
            width = len(self.coding.image(letter))
            if position + width > length:
                break
            spans.append((position, position + width))
            position += width
        return spans

    def as_json(self) -> dict:
        out: dict = {"base": self.base.to_json_dict(), "seed": self.seed}
        if self.coding is not None:
            out["coding"] = self.coding.to_json_dict()
            out["target_alphabet"] = self.coding.target_alphabet
        out["base_alphabet"] = self.base.target_alphabet
        if self.name:
            out["name"] = self.name
        return out


def thue_morse_spec() -> MorphicWordSpec:
    return MorphicWordSpec(THUE_MORSE_MORPHISM, 0, name="thue-morse")


def ternary_thue_spec() -> MorphicWordSpec:
    return MorphicWordSpec(TERNARY_THUE_MORPHISM, 0, name="ternary-thue")


def h_alpha_spec() -> MorphicWordSpec:
    return MorphicWordSpec(TERNARY_THUE_MORPHISM, 0, coding=H_ALPHA_CODING, name="h-alpha")


_BUILTINS = {
    "thue-morse": thue_morse_spec,
    "ternary-thue": ternary_thue_spec,
    "h-alpha": h_alpha_spec,
}


def builtin_spec(name: str) -> MorphicWordSpec:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(
            f"unknown builtin spec {name!r}; available: {', '.join(sorted(_BUILTINS))}"
        ) from None


def load_spec(source: str | Path) -> MorphicWordSpec:
    """A builtin spec by name, or a spec parsed from a JSON file."""
    if isinstance(source, str) and source in _BUILTINS:
        return builtin_spec(source)
    data = json.loads(Path(source).read_text(encoding="utf-8"))
    base = Morphism.from_json_dict(data["base"], data.get("base_alphabet"))
    coding = None
    if "coding" in data:
        coding = Morphism.from_json_dict(data["coding"], data.get("target_alphabet"))
    return MorphicWordSpec(base, int(data["seed"]), coding, data.get("name"))


def h_alpha_prefix(length: int) -> Word:
    """Prefix of the coded ternary Thue word over five letters."""
    return h_alpha_spec().generate(length)


def max_gap_without_full_image(spec: MorphicWordSpec, length: int) -> int:
    """Longest factor of the length-L prefix containing no complete coding image.

    Computed from the image-boundary decomposition: a factor [x, y) contains
    the image spanning [s, s+w) exactly when x <= s and s+w <= y.
    """
    spans = spec.complete_image_spans(length)
    if not spans:
        return length
    starts = [s for s, _ in spans]
    best = 0
    for x in [0] + [s + 1 for s in starts]:
        nxt = bisect_left(starts, x)
        y = spans[nxt][1] - 1 if nxt < len(spans) else length
        if y - x > best:
            best = y - x
    return best


@dataclass(frozen=True)
class AvoidanceCertificate:
    """Record of a bounded avoidance check; its scope is explicit in the bounds."""

    spec: MorphicWordSpec
    prefix_length: int
    max_block_length: int
    forbidden_params: tuple[int, ...]
    model: PermModel
    status: str  # "clean" | "witness" | "partial"
    witness: InstanceWitness | None = None
    gap_without_full_image: int | None = None
    checked_prefix_length: int | None = None

    @property
    def clean(self) -> bool:
        return self.status == "clean"

    def as_json(self) -> dict:
        return {
            "spec": self.spec.as_json(),
            "prefix_length": self.prefix_length,
            "max_block_length": self.max_block_length,
            "forbidden_params": list(self.forbidden_params),
            "model": self.model.value,
            "status": self.status,
            "witness": self.witness.as_json() if self.witness else None,
            "gap_without_full_image": self.gap_without_full_image,
            "checked_prefix_length": self.checked_prefix_length,
        }


def verify_prefix_avoids(
    spec: MorphicWordSpec,
    forbidden_params,
    model: PermModel,
    max_block_length: int,
    prefix_length: int,
    max_positions: int | None = None,
) -> AvoidanceCertificate:
    """Exhaustively check every factor of the prefix up to the block-length bound.

    ``max_positions`` caps how many factor end positions are examined; when it
    is exceeded the certificate reports status "partial" with the prefix
    length actually covered.
    """
    if max_block_length < 1 or prefix_length < 1:
        raise ValueError("bounds must be positive")
    params = tuple(sorted(set(forbidden_params)))
    if any(a not in ALPHA_INDICES for a in params):
        raise ValueError("forbidden parameters must be alpha indices in 1..14")
    word = spec.generate(prefix_length)
    config = SearchConfig.for_params(
        alphabet=spec.target_alphabet, params=params, model=model
    )
    compiled = _compiled(config.model, config.alphabet)
    gap = (
        max_gap_without_full_image(spec, prefix_length) if spec.coding is not None else None
    )
    letters = word.letters
    positions = 0
    for end in range(4, len(letters) + 1):
        if max_positions is not None and positions >= max_positions:
            return AvoidanceCertificate(
                spec=spec,
                prefix_length=prefix_length,
                max_block_length=max_block_length,
                forbidden_params=params,
                model=model,
                status="partial",
                gap_without_full_image=gap,
                checked_prefix_length=end - 1,
            )
        positions += 1
        witness = _suffix_witness(letters, end, config, compiled, max_block_length)
        if witness is not None:
            return AvoidanceCertificate(
                spec=spec,
                prefix_length=prefix_length,
                max_block_length=max_block_length,
                forbidden_params=params,
                model=model,
                status="witness",
                witness=witness,
                gap_without_full_image=gap,
                checked_prefix_length=end,
            )
    return AvoidanceCertificate(
        spec=spec,
        prefix_length=prefix_length,
        max_block_length=max_block_length,
        forbidden_params=params,
        model=model,
        status="clean",
        gap_without_full_image=gap,
        checked_prefix_length=prefix_length,
    )


def four_power_free_certificate(spec: MorphicWordSpec, length: int) -> bool:
    """True iff the length-L prefix contains no factor u u u u."""
    return is_four_power_free(spec.generate(length))
