import json

import pytest

from permavoid.search import PermModel
from permavoid.verifier import (
    H_ALPHA_CODING,
    MorphicWordSpec,
    builtin_spec,
    four_power_free_certificate,
    h_alpha_prefix,
    h_alpha_spec,
    load_spec,
    max_gap_without_full_image,
    ternary_thue_spec,
    thue_morse_spec,
    verify_prefix_avoids,
)
from permavoid.words import Morphism, is_square_free, ternary_thue_prefix


class TestHAlphaConstruction:
    def test_first_image(self):
        assert h_alpha_prefix(16).text() == "0123041203410234"

    def test_first_two_images(self):
        assert h_alpha_prefix(32).text() == "0123041203410234" + "0132403124302134"

    def test_requested_length_honoured(self):
        for length in (1, 7, 16, 100, 1234):
            assert len(h_alpha_prefix(length)) == length

    def test_coding_image_shapes(self):
        images = [H_ALPHA_CODING.image(a) for a in range(3)]
        assert all(len(img) == 16 for img in images)
        assert all(img[0] == 0 for img in images)
        assert all(set(img) == {0, 1, 2, 3, 4} for img in images)
        assert len(set(images)) == 3

    def test_decodes_back_to_base_word(self):
        # the coding is injective on images, so cutting at image boundaries
        # recovers a prefix of the base word
        word = h_alpha_prefix(2048).letters
        inverse = {H_ALPHA_CODING.image(a): a for a in range(3)}
        decoded = bytes(
            inverse[word[pos : pos + 16]] for pos in range(0, len(word) - 15, 16)
        )
        assert decoded == ternary_thue_prefix(len(decoded)).letters


class TestMaxGap:
    def test_h_alpha_gap_small_prefix(self):
        assert max_gap_without_full_image(h_alpha_spec(), 2000) == 30

    def test_single_image_spec(self):
        spec = MorphicWordSpec(
            Morphism({0: "00"}), 0, coding=Morphism({0: "01234"}, target_alphabet=5)
        )
        assert max_gap_without_full_image(spec, 30) == 8  # 2 * (5 - 1)

    def test_unit_length_images(self):
        spec = MorphicWordSpec(
            Morphism({0: "01", 1: "10"}), 0, coding=Morphism({0: "1", 1: "0"}, target_alphabet=2)
        )
        assert max_gap_without_full_image(spec, 64) == 0

    def test_prefix_shorter_than_one_image(self):
        assert max_gap_without_full_image(h_alpha_spec(), 10) == 10

    def test_requires_coding(self):
        with pytest.raises(ValueError):
            max_gap_without_full_image(ternary_thue_spec(), 100)


class TestVerifyPrefixAvoids:
    def test_square_free_base_avoids_square_shaped_parameters(self):
        # every forbidden representation here carries an adjacent equal pair,
        # which would be a square factor; the ternary Thue word has none
        certificate = verify_prefix_avoids(
            ternary_thue_spec(),
            [6, 9, 10],
            PermModel.ALL_PERMUTATIONS,
            max_block_length=10,
            prefix_length=5000,
        )
        assert certificate.clean
        assert certificate.status == "clean"
        assert certificate.gap_without_full_image is None
        assert certificate.checked_prefix_length == 5000

    def test_alternating_word_yields_witness(self):
        spec = MorphicWordSpec(Morphism({0: "01", 1: "01"}), 0)
        certificate = verify_prefix_avoids(
            spec, [11], PermModel.ALL_PERMUTATIONS, max_block_length=2, prefix_length=8
        )
        assert certificate.status == "witness"
        witness = certificate.witness
        assert witness.start == 0
        assert witness.block_length == 1
        assert witness.blocks == (b"\x00", b"\x01", b"\x00", b"\x01")
        assert witness.pattern == "0101"

    def test_position_cap_gives_partial_status(self):
        certificate = verify_prefix_avoids(
            ternary_thue_spec(),
            [6, 9, 10],
            PermModel.ALL_PERMUTATIONS,
            max_block_length=5,
            prefix_length=600,
            max_positions=50,
        )
        assert certificate.status == "partial"
        assert certificate.checked_prefix_length < 600

    def test_h_alpha_clean_one_past_the_gap(self):
        # blocks one letter longer than the widest image-free factor stay clean
        certificate = verify_prefix_avoids(
            h_alpha_spec(), range(2, 15), PermModel.ALL_PERMUTATIONS,
            max_block_length=31, prefix_length=3000,
        )
        assert certificate.clean

    def test_monotone_in_bounds(self):
        spec = h_alpha_spec()
        big = verify_prefix_avoids(
            spec, range(2, 15), PermModel.ALL_PERMUTATIONS, max_block_length=12,
            prefix_length=800,
        )
        assert big.clean
        for max_block, length in [(6, 800), (12, 400), (3, 200)]:
            small = verify_prefix_avoids(
                spec, range(2, 15), PermModel.ALL_PERMUTATIONS,
                max_block_length=max_block, prefix_length=length,
            )
            assert small.clean

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            verify_prefix_avoids(
                ternary_thue_spec(), [0, 3], PermModel.ALL_PERMUTATIONS, 5, 100
            )

    def test_detector_cross_check_on_h_alpha_factors(self):
        # sample factors of the five-letter word and compare the detector's
        # verdict with an independent exponent-existence enumeration over all
        # 120 permutations
        import random
        from itertools import permutations as all_perms

        from permavoid.search import SearchConfig, suffix_instance
        from permavoid.search import forbidden_patterns

        word = h_alpha_prefix(1200).letters
        forbidden = forbidden_patterns(range(2, 15))
        config = SearchConfig(alphabet=5, forbidden=forbidden, model=PermModel.ALL_PERMUTATIONS)

        def perm_powers(images):
            powers = [tuple(range(5))]
            while True:
                nxt = tuple(images[a] for a in powers[-1])
                if nxt == powers[0]:
                    break
                powers.append(nxt)
            return powers

        tables = [perm_powers(f) for f in all_perms(range(5))]
        assert len(tables) == 120

        def oracle(factor):
            n = len(factor)
            for b in range(1, n // 4 + 1):
                s = n - 4 * b
                blocks = [tuple(factor[s + l * b : s + (l + 1) * b]) for l in range(4)]
                labels = {}
                pattern = "".join(labels.setdefault(blk, str(len(labels))) for blk in blocks)
                if pattern not in forbidden:
                    continue
                for powers in tables:
                    order = len(powers)
                    if all(
                        any(
                            tuple(powers[e % order][a] for a in blocks[0]) == v
                            for e in range(1, order + 1)
                        )
                        for v in blocks[1:]
                    ):
                        return True
            return False

        rng = random.Random(31337)
        for _ in range(400):
            b = rng.randint(1, 4)
            start = rng.randrange(0, len(word) - 4 * b)
            factor = word[start : start + 4 * b]
            assert (suffix_instance(factor, config) is not None) == oracle(factor)

    def test_certificate_json(self):
        certificate = verify_prefix_avoids(
            ternary_thue_spec(), [10], PermModel.FULL_CYCLE, 4, 120
        )
        data = certificate.as_json()
        assert data["status"] == "clean"
        assert data["model"] == "cycle"
        assert data["forbidden_params"] == [10]
        assert data["prefix_length"] == 120


class TestFourPowerCertificates:
    def test_thue_morse(self):
        assert four_power_free_certificate(thue_morse_spec(), 4000)

    def test_constant_word(self):
        spec = MorphicWordSpec(Morphism({0: "00"}), 0)
        assert not four_power_free_certificate(spec, 4)

    def test_h_alpha_small(self):
        assert four_power_free_certificate(h_alpha_spec(), 4000)


class TestSpecs:
    def test_builtin_names(self):
        assert builtin_spec("h-alpha").coding is not None
        assert builtin_spec("thue-morse").coding is None
        with pytest.raises(ValueError):
            builtin_spec("nope")

    def test_generate_matches_prefix_functions(self):
        assert ternary_thue_spec().generate(200) == ternary_thue_prefix(200)
        assert is_square_free(ternary_thue_spec().generate(400))

    def test_target_alphabet(self):
        assert h_alpha_spec().target_alphabet == 5
        assert thue_morse_spec().target_alphabet == 2

    def test_non_prolongable_spec_rejected(self):
        with pytest.raises(ValueError):
            MorphicWordSpec(Morphism({0: "10", 1: "1"}), 0)

    def test_coding_must_cover_base_alphabet(self):
        with pytest.raises(ValueError):
            MorphicWordSpec(
                Morphism({0: "01", 1: "10"}), 0, coding=Morphism({0: "1"}, target_alphabet=2)
            )

    def test_load_spec_file_round_trip(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(h_alpha_spec().as_json()), encoding="utf-8")
        loaded = load_spec(path)
        assert loaded.base == h_alpha_spec().base
        assert loaded.coding == h_alpha_spec().coding
        assert loaded.generate(64) == h_alpha_prefix(64)

    def test_load_spec_builtin_name(self):
        assert load_spec("ternary-thue").generate(20) == ternary_thue_prefix(20)
