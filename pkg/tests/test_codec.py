"""
Test SVDC Codec
Container layout, bit-exact roundtrips, corruption handling, rank selection, compression accounting
"""

import os
import struct
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from codec.container import (HEADER_SIZE, CompressedImage, Precision,
                             read_container, write_container)
from codec.encoder import (break_even_rank, byte_compression_ratio, compression_ratio,
                           decode, encode, encode_factors, to_truncated)
from codec.rank_selection import choose_rank
from core.exceptions import (BadMagic, CorruptContainer, InputError, OutOfRange,
                             RankOutOfRange, UnsupportedVersion)
from linalg.matrix import Matrix
from linalg.svd import reconstruct, svd, truncate
from metrics.energy import energy_ratio, energy_ratio_truncated


def random_image(seed: int, shape=(24, 20)) -> Matrix:
    rng = np.random.default_rng(seed)
    return Matrix(rng.integers(0, 256, size=shape).astype(np.float64))


class TestContainerLayout:
    """Byte layout of the SVDC format."""

    def setup_method(self):
        self.image = random_image(1)
        self.compressed = encode(self.image, 5, Precision.F32)
        self.data = write_container(self.compressed)

    def test_header_fields(self):
        """Test 1: magic, version, precision, reserved and dimensions at fixed offsets"""
        assert HEADER_SIZE == 36
        assert self.data[:4] == b"SVDC"
        assert self.data[4] == 1
        assert self.data[5] == 0
        assert self.data[6:8] == b"\x00\x00"
        assert struct.unpack_from("<III", self.data, 8) == (24, 20, 5)
        total_energy, peak = struct.unpack_from("<dd", self.data, 20)
        assert peak == float(np.max(self.image.data))
        assert total_energy == pytest.approx(float(np.sum(self.image.data ** 2)), rel=1e-10)

    def test_length(self):
        """Test 2: 36 + (k + m k + n k) * 4 bytes at f32"""
        assert len(self.data) == 36 + (5 + 24 * 5 + 20 * 5) * 4
        assert self.compressed.byte_size == len(self.data)
        assert self.compressed.scalar_count == 5 + 24 * 5 + 20 * 5

    def test_column_major_payload(self):
        """Test 3: u_k is stored column by column after sigma_k"""
        offset = HEADER_SIZE + 5 * 4
        first_column = np.frombuffer(self.data, dtype="<f4", count=24, offset=offset)

        assert np.array_equal(first_column, self.compressed.u_k[:, 0])

    def test_scalar_count_for_512(self):
        """Test 4: a 512x512 image at k=40 stores 41000 scalars"""
        c = CompressedImage(
            rows=512, cols=512, k=40, precision=Precision.F32, total_energy=1.0, pixel_peak=255.0,
            sigma_k=np.zeros(40), u_k=np.zeros((512, 40)), v_k=np.zeros((512, 40))
        )
        assert c.scalar_count == 41000
        assert c.byte_size == 36 + 41000 * 4


class TestRoundtrip:

    def test_f64_bit_exact(self):
        """Test 5: write/read at f64 reproduces every payload bit"""
        original = encode(random_image(5), 7, Precision.F64)
        restored = read_container(write_container(original))

        assert restored.same_as(original)
        assert write_container(restored) == write_container(original)

    def test_f64_decode_matches_truncation(self):
        """Test 6: decoding an f64 container equals quantizing the direct reconstruction"""
        image = random_image(6)
        factors = svd(image)
        direct = reconstruct(truncate(factors, 6)).data
        decoded = decode(read_container(write_container(encode_factors(image, factors, 6, Precision.F64)))).data

        expected = np.sign(np.clip(direct, 0, 255)) * np.floor(np.abs(np.clip(direct, 0, 255)) + 0.5)
        assert np.array_equal(decoded, expected)

    def test_f32_close_to_f64(self):
        """Test 7: f32 storage moves the unquantized reconstruction by under one gray level"""
        image = random_image(7)
        factors = svd(image)
        r32 = reconstruct(to_truncated(encode_factors(image, factors, 8, Precision.F32))).data
        r64 = reconstruct(to_truncated(encode_factors(image, factors, 8, Precision.F64))).data

        assert np.max(np.abs(r32 - r64)) < 1.0

    def test_f32_deviation_bound(self):
        """Test 7b: on a 128x128 8-bit image f32 storage stays within half a gray level up to k=128"""
        rows, cols = np.mgrid[0:128, 0:128]
        noise = np.random.default_rng(70).integers(0, 40, size=(128, 128))
        pixels = np.clip(96 + 60 * np.sin(rows / 9.0) * np.cos(cols / 13.0) + noise, 0, 255).astype(np.uint8)
        image = Matrix(pixels.astype(np.float64))
        factors = svd(image)

        for k in (8, 40, 128):
            r32 = reconstruct(to_truncated(encode_factors(image, factors, k, Precision.F32))).data
            r64 = reconstruct(to_truncated(encode_factors(image, factors, k, Precision.F64))).data
            deviation = np.max(np.abs(r32 - r64))
            print(f"\nk={k} f32 deviation = {deviation:.3e}")
            assert deviation <= 0.5

    def test_full_rank_lossless(self):
        """Test 8: k = min(m, n) at f64 decodes to the original pixels"""
        image = random_image(8)
        decoded = decode(read_container(write_container(encode(image, 20, Precision.F64))))

        assert np.array_equal(decoded.data, image.data)

    def test_decoded_range(self):
        """Test 9: decoded values are integers in [0, 255]"""
        decoded = decode(encode(random_image(9), 1)).data

        assert decoded.min() >= 0 and decoded.max() <= 255
        assert np.array_equal(decoded, np.round(decoded))

    def test_energy_from_container(self):
        """Test 10: energy ratio read back from a container matches the factorization"""
        image = random_image(10)
        factors = svd(image)
        restored = read_container(write_container(encode_factors(image, factors, 4, Precision.F64)))

        assert energy_ratio_truncated(to_truncated(restored)) == pytest.approx(
            energy_ratio(factors, 4), abs=1e-12)


class TestCorruption:

    def setup_method(self):
        self.data = write_container(encode(random_image(11), 3, Precision.F32))

    def test_bad_magic(self):
        """Test 11: a wrong signature is rejected with the bad magic message"""
        with pytest.raises(BadMagic, match="bad magic"):
            read_container(b"XXXX" + self.data[4:])

    @pytest.mark.parametrize("data", [b"", b"S", b"SV", b"SVD"])
    def test_truncated_magic(self, data):
        """Test 12: a stream that stops inside the magic is truncated, not foreign"""
        with pytest.raises(CorruptContainer, match="truncated"):
            read_container(data)

    def test_short_foreign_stream(self):
        """Test 12b: a short stream that is not a magic prefix is a bad magic"""
        with pytest.raises(BadMagic):
            read_container(b"SVX")

    def test_unsupported_version(self):
        """Test 13: only version 1 is understood"""
        with pytest.raises(UnsupportedVersion):
            read_container(self.data[:4] + b"\x02" + self.data[5:])

    def test_bad_precision_code(self):
        """Test 14: precision codes other than 0 and 1 are corrupt"""
        with pytest.raises(CorruptContainer):
            read_container(self.data[:5] + b"\x07" + self.data[6:])

    def test_reserved_bytes(self):
        """Test 15: reserved bytes must be zero"""
        with pytest.raises(CorruptContainer):
            read_container(self.data[:6] + b"\x01\x00" + self.data[8:])

    @pytest.mark.parametrize("cut", [1, 4, 100])
    def test_truncated(self, cut):
        """Test 16: every truncated payload is rejected"""
        with pytest.raises(CorruptContainer):
            read_container(self.data[:-cut])

    def test_short_header(self):
        """Test 17: a header cut short is corrupt"""
        with pytest.raises(CorruptContainer):
            read_container(self.data[:20])

    def test_trailing_bytes(self):
        """Test 18: extra bytes after the payload are rejected"""
        with pytest.raises(CorruptContainer):
            read_container(self.data + b"\x00")

    def test_rank_larger_than_dimensions(self):
        """Test 19: k above min(m, n) in the header is corrupt"""
        patched = self.data[:16] + struct.pack("<I", 99) + self.data[20:]
        with pytest.raises(CorruptContainer):
            read_container(patched)

    def test_errors_are_input_errors(self):
        """Test 20: container failures map to the input exit code"""
        with pytest.raises(InputError) as excinfo:
            read_container(b"NOPE")
        assert excinfo.value.exit_code == 2


class TestEncoderContracts:

    def test_rank_out_of_range(self):
        """Test 21: encode rejects k outside 1..min(m, n)"""
        with pytest.raises(RankOutOfRange):
            encode(random_image(21), 21)
        with pytest.raises(RankOutOfRange):
            encode(random_image(21), 0)

    def test_pixel_range_required(self):
        """Test 22: encode expects 8-bit pixel values"""
        with pytest.raises(InputError):
            encode(Matrix(np.full((4, 4), 300.0)), 2)

    def test_precision_parse(self):
        """Test 23: precision names parse case-insensitively"""
        assert Precision.parse("f32") is Precision.F32
        assert Precision.parse("F64") is Precision.F64
        with pytest.raises(ValueError):
            Precision.parse("f16")


class TestCompressionRatio:

    def test_512_at_40(self):
        """Test 24: 512x512 at k=40 compresses about 6.394 times"""
        assert compression_ratio(512, 512, 40) == pytest.approx(262144 / 41000)
        assert compression_ratio(512, 512, 40) == pytest.approx(6.394, abs=1e-3)

    def test_full_rank_expands(self):
        """Test 25: k = 512 stores about twice the pixels"""
        assert compression_ratio(512, 512, 512) == pytest.approx(0.4995, abs=1e-4)

    def test_break_even(self):
        """Test 26: the largest compressing rank on 512x512 is 255"""
        assert break_even_rank(512, 512) == 255
        assert compression_ratio(512, 512, 255) > 1.0
        assert compression_ratio(512, 512, 256) < 1.0

    def test_byte_ratio(self):
        """Test 27: byte ratio counts the header and the value width"""
        assert byte_compression_ratio(512, 512, 40, "f32") == pytest.approx(262144 / (36 + 41000 * 4))
        assert byte_compression_ratio(512, 512, 40, "f64") == pytest.approx(262144 / (36 + 41000 * 8))

    def test_invalid_rank(self):
        """Test 28: ratio requires 1 <= k <= min(m, n)"""
        with pytest.raises(RankOutOfRange):
            compression_ratio(10, 10, 11)


class TestRankSelection:

    def setup_method(self):
        self.factors = svd(Matrix.from_rows([[3, 0], [4, 5]]))

    def test_target_reached_at_one(self):
        """Test 29: E(1) = 0.9 satisfies a 0.9 - 1e-9 target"""
        selection = choose_rank(self.factors, 0.9 - 1e-9)

        assert selection.k == 1
        assert selection.achieved_e >= selection.target_e

    def test_target_needs_two(self):
        """Test 30: 0.95 needs both singular values"""
        selection = choose_rank(self.factors, 0.95)

        assert selection.k == 2
        assert selection.achieved_e == 1.0

    def test_smallest_k(self):
        """Test 31: the selected k is minimal on a random image"""
        factors = svd(random_image(31))
        for target in (0.5, 0.9, 0.99, 0.999, 1.0):
            k = choose_rank(factors, target).k
            assert energy_ratio(factors, k) >= target
            if k > 1:
                assert energy_ratio(factors, k - 1) < target

    @pytest.mark.parametrize("target", [0.0, -0.5, 1.01])
    def test_invalid_target(self, target):
        """Test 32: targets outside (0, 1] are rejected"""
        with pytest.raises(OutOfRange):
            choose_rank(self.factors, target)


@st.composite
def containers(draw):
    m = draw(st.integers(1, 12))
    n = draw(st.integers(1, 12))
    k = draw(st.integers(1, min(m, n)))
    precision = draw(st.sampled_from(list(Precision)))
    values = st.floats(-1.0, 1.0, allow_nan=False, width=32)
    sigma = np.sort(np.abs(draw(arrays(np.float64, k, elements=values))))[::-1]
    return CompressedImage(
        rows=m, cols=n, k=k, precision=precision,
        total_energy=float(np.sum(sigma ** 2)) + draw(st.floats(0.0, 10.0)),
        pixel_peak=draw(st.floats(0.0, 255.0)),
        sigma_k=sigma,
        u_k=draw(arrays(np.float64, (m, k), elements=values)),
        v_k=draw(arrays(np.float64, (n, k), elements=values))
    )


@settings(max_examples=100, deadline=None)
@given(containers())
def test_container_write_read_identity(c):
    """Test 33: read_container(write_container(c)) reproduces c field for field"""
    assert read_container(write_container(c)).same_as(c)


@settings(max_examples=20, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 16), st.integers(1, 16))))
def test_full_rank_f64_byte_identical(pixels):
    """Test 34: decode(encode(I, min(m, n), f64)) gives back I exactly"""
    image = Matrix(pixels.astype(np.float64))
    decoded = decode(encode(image, min(pixels.shape), Precision.F64))

    assert np.array_equal(decoded.data, image.data)
