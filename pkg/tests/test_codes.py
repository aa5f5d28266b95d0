import itertools
import json

import numpy as np
import pytest

from qviterbi import (
    BitVector,
    Gf2Matrix,
    LengthError,
    NotLinearError,
    RankError,
    builtin_code,
    builtin_names,
    code_from_codewords,
    code_from_generator,
    code_from_json,
    hamming_distance,
    load_code,
    min_weight_codewords,
)
from conftest import (
    BUILTIN_NAMES,
    CODESPACE_321,
    CODESPACE_633,
    CODESPACE_CONV,
    MIN_WEIGHT_633,
    MIN_WEIGHT_CONV,
    PARITY_633,
)


def bv(s):
    return BitVector.from_string(s)


class TestBitVector:
    def test_string_roundtrip(self):
        assert str(bv("0101")) == "0101"

    def test_index_roundtrip(self):
        for i in range(16):
            assert BitVector.from_index(i, 4).to_index() == i

    def test_leftmost_bit_is_most_significant(self):
        assert bv("100").to_index() == 4
        assert bv("001").to_index() == 1

    def test_weight(self):
        assert bv("011011").weight == 4
        assert BitVector.zero(5).weight == 0

    def test_xor(self):
        assert str(bv("1100") ^ bv("1010")) == "0110"

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            bv("01x")
        with pytest.raises(ValueError):
            BitVector(())


class TestHammingDistance:
    def test_known_value(self):
        assert hamming_distance(bv("011011"), bv("111011")) == 1

    def test_identity(self):
        for s in ("0", "010", "111011"):
            assert hamming_distance(bv(s), bv(s)) == 0

    def test_tied_pair(self):
        assert hamming_distance(bv("010"), bv("011")) == 1
        assert hamming_distance(bv("111"), bv("011")) == 1

    def test_symmetric_and_equals_xor_weight(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a = BitVector(tuple(rng.integers(0, 2, 7).tolist()))
            b = BitVector(tuple(rng.integers(0, 2, 7).tolist()))
            assert hamming_distance(a, b) == hamming_distance(b, a) == (a ^ b).weight

    def test_length_mismatch(self):
        with pytest.raises(LengthError):
            hamming_distance(bv("01"), bv("011"))


class TestGf2Matrix:
    def test_rref_pivots_strictly_increasing(self):
        m = Gf2Matrix.from_rows([[0, 1, 0], [1, 0, 1], [1, 1, 1]])
        reduced, pivots = m.rref()
        assert list(pivots) == sorted(pivots)
        assert reduced.rank() == len(pivots)

    def test_rank(self):
        assert Gf2Matrix.from_rows([[1, 0], [0, 1]]).rank() == 2
        assert Gf2Matrix.from_rows([[1, 1], [1, 1]]).rank() == 1

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            Gf2Matrix.from_rows([[0, 2]])


class TestCodeFromGenerator:
    def test_633_codespace(self, lbc_633):
        assert sorted(str(c) for c in lbc_633.codespace) == sorted(CODESPACE_633)
        assert (lbc_633.n, lbc_633.k, lbc_633.d) == (6, 3, 3)

    def test_633_parity_check(self, lbc_633):
        assert lbc_633.parity_check.to_array().tolist() == PARITY_633

    def test_single_bit_code(self):
        code = code_from_generator(Gf2Matrix.from_rows([[1]]))
        assert sorted(str(c) for c in code.codespace) == ["0", "1"]
        assert code.d == 1

    def test_321_codespace(self, lbc_321):
        assert sorted(str(c) for c in lbc_321.codespace) == sorted(CODESPACE_321)
        assert lbc_321.d == 1

    def test_rank_deficient(self):
        with pytest.raises(RankError):
            code_from_generator(Gf2Matrix.from_rows([[1, 0, 1], [1, 0, 1]]))

    def test_more_rows_than_columns(self):
        with pytest.raises(RankError):
            code_from_generator(Gf2Matrix.from_rows([[1], [1]]))


class TestCodeFromCodewords:
    def test_convolutional_codespace(self, conv_code):
        assert sorted(str(c) for c in conv_code.codespace) == sorted(CODESPACE_CONV)
        assert (conv_code.k, conv_code.d) == (3, 5)

    def test_zero_code(self):
        code = code_from_codewords([BitVector.zero(4)])
        assert code.k == 0
        assert code.d == 0
        assert [str(c) for c in code.codespace] == ["0000"]

    def test_rank_two_code(self):
        words = [bv(s) for s in CODESPACE_321]
        code = code_from_codewords(words)
        assert code.k == 2
        # Independent check: scan the listed words for the minimum weight.
        assert code.d == min(w.weight for w in words if w.weight > 0) == 1

    def test_not_closed(self):
        with pytest.raises(NotLinearError):
            code_from_codewords([bv("000"), bv("010"), bv("101"), bv("110")])

    def test_not_power_of_two(self):
        with pytest.raises(NotLinearError):
            code_from_codewords([bv("000"), bv("010"), bv("101")])

    def test_missing_zero(self):
        with pytest.raises(NotLinearError):
            code_from_codewords([bv("01"), bv("10")])

    def test_mixed_lengths(self):
        with pytest.raises(LengthError):
            code_from_codewords([bv("00"), bv("010")])


class TestMinWeightCodewords:
    def test_633(self, lbc_633):
        assert [str(c) for c in min_weight_codewords(lbc_633)] == sorted(MIN_WEIGHT_633)

    def test_convolutional(self, conv_code):
        assert [str(c) for c in min_weight_codewords(conv_code)] == sorted(MIN_WEIGHT_CONV)

    def test_321(self, lbc_321):
        assert [str(c) for c in min_weight_codewords(lbc_321)] == ["010"]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
class TestCodeInvariants:
    def test_linearity_random_pairs(self, name, all_builtins):
        code = all_builtins[name]
        rng = np.random.default_rng(7)
        members = {c.to_index() for c in code.codespace}
        for _ in range(100):
            c1, c2 = rng.choice(len(code.codespace), 2)
            assert (code.codespace[c1] ^ code.codespace[c2]).to_index() in members

    def test_parity_check_is_bidirectional(self, name, all_builtins):
        code = all_builtins[name]
        if code.parity_check is None:
            pytest.skip("no parity-check matrix for this code")
        h = code.parity_check.to_array()
        members = {c.to_index() for c in code.codespace}
        for v in range(1 << code.n):
            word = np.array(BitVector.from_index(v, code.n).bits, dtype=np.uint8)
            syndrome_zero = not (word @ h.T % 2).any()
            assert syndrome_zero == (v in members)

    def test_d_is_min_pairwise_distance(self, name, all_builtins):
        code = all_builtins[name]
        pairwise = min(
            hamming_distance(a, b)
            for a, b in itertools.combinations(code.codespace, 2)
        )
        assert code.d == pairwise

    def test_codespace_size(self, name, all_builtins):
        code = all_builtins[name]
        assert len(code.codespace) == 1 << code.k


class TestJsonInterface:
    def test_builtin_names(self):
        assert builtin_names() == sorted(BUILTIN_NAMES)

    def test_generator_json(self):
        code = code_from_json(
            {"name": "toy", "n": 3, "k": 2, "generator": [[0, 1, 0], [1, 0, 1]]}
        )
        assert code.name == "toy"
        assert sorted(str(c) for c in code.codespace) == sorted(CODESPACE_321)

    def test_generator_json_shape_mismatch(self):
        with pytest.raises(ValueError):
            code_from_json({"n": 4, "generator": [[0, 1, 0], [1, 0, 1]]})

    def test_codewords_json_with_branch_bits(self):
        code = code_from_json({"name": "c", "codewords": CODESPACE_CONV, "branch_bits": 2})
        assert code.branch_bits == 2
        assert code.kind == "convolutional-terminated"

    def test_missing_fields(self):
        with pytest.raises(ValueError):
            code_from_json({"name": "empty"})

    def test_load_code_from_file(self, tmp_path):
        path = tmp_path / "code.json"
        path.write_text(json.dumps({"name": "file_code", "codewords": CODESPACE_321}))
        code = load_code(str(path))
        assert code.name == "file_code"
        assert code.k == 2

    def test_load_code_builtin(self):
        assert load_code("lbc_633").n == 6

    def test_builtin_unknown(self):
        with pytest.raises(KeyError):
            builtin_code("nope")
