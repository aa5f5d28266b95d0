import numpy as np
import pytest

from qviterbi import (
    BitVector,
    Code,
    Gf2Matrix,
    LengthError,
    TrellisError,
    build_trellis,
    code_from_codewords,
    hamming_distance,
    ml_brute_force,
    viterbi_decode,
)
from conftest import BUILTIN_NAMES


def bv(s):
    return BitVector.from_string(s)


class TestBuildTrellis:
    def test_633_has_eight_paths(self, lbc_633):
        trellis = build_trellis(lbc_633)
        assert trellis.path_count() == 8
        assert trellis.depth == 7

    def test_zero_code_single_path(self):
        code = code_from_codewords([BitVector.zero(4)])
        trellis = build_trellis(code)
        assert trellis.path_count() == 1
        result = viterbi_decode(trellis, bv("1111"))
        assert result.best_metric == 4
        assert [str(c) for c in result.best_codewords] == ["0000"]

    def test_convolutional_shape(self, conv_code):
        trellis = build_trellis(conv_code)
        assert trellis.path_count() == 8
        assert trellis.num_instants == 5
        assert trellis.branch_bits == 2

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_null_state_at_both_ends(self, name, all_builtins):
        trellis = build_trellis(all_builtins[name])
        assert trellis.node_layers[0] == (0,)
        assert trellis.node_layers[-1] == (0,)

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_path_count_is_codespace_size(self, name, all_builtins):
        code = all_builtins[name]
        assert build_trellis(code).path_count() == 1 << code.k

    def test_missing_data_raises(self):
        broken = Code(
            n=2, k=0, d=0,
            generator=Gf2Matrix(0, 2, ()),
            parity_check=None,
            codespace=(),
        )
        with pytest.raises(TrellisError):
            build_trellis(broken)


class TestViterbiDecode:
    def test_633_single_error(self, lbc_633):
        result = viterbi_decode(build_trellis(lbc_633), bv("111011"))
        assert result.best_metric == 1
        assert [str(c) for c in result.best_codewords] == ["011011"]

    def test_codeword_decodes_to_itself(self, lbc_633):
        trellis = build_trellis(lbc_633)
        for c in lbc_633.codespace:
            result = viterbi_decode(trellis, c)
            assert result.best_metric == 0
            assert result.best_codewords == (c,)

    def test_321_keeps_both_ties(self, lbc_321):
        result = viterbi_decode(build_trellis(lbc_321), bv("011"))
        assert result.best_metric == 1
        assert [str(c) for c in result.best_codewords] == ["010", "111"]

    def test_length_mismatch(self, lbc_633):
        with pytest.raises(LengthError):
            viterbi_decode(build_trellis(lbc_633), bv("111"))

    def test_per_codeword_metrics(self, lbc_633):
        r = bv("111011")
        result = viterbi_decode(build_trellis(lbc_633), r)
        assert len(result.per_codeword_metric) == 8
        for c, m in result.per_codeword_metric.items():
            assert m == hamming_distance(c, r)


class TestBruteForce:
    def test_633_single_error(self, lbc_633):
        result = ml_brute_force(lbc_633, bv("111011"))
        assert result.best_metric == 1
        assert [str(c) for c in result.best_codewords] == ["011011"]

    def test_zero_vector(self, lbc_633):
        result = ml_brute_force(lbc_633, bv("000000"))
        assert result.best_metric == 0
        assert [str(c) for c in result.best_codewords] == ["000000"]

    def test_length_mismatch(self, lbc_633):
        with pytest.raises(LengthError):
            ml_brute_force(lbc_633, bv("0"))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_oracle_agreement_exhaustive(name, all_builtins):
    code = all_builtins[name]
    trellis = build_trellis(code)
    for v in range(1 << code.n):
        r = BitVector.from_index(v, code.n)
        via_trellis = viterbi_decode(trellis, r)
        via_scan = ml_brute_force(code, r)
        assert via_trellis.best_metric == via_scan.best_metric
        assert via_trellis.best_codewords == via_scan.best_codewords


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_metric_bounded_by_received_weight(name, all_builtins):
    code = all_builtins[name]
    trellis = build_trellis(code)
    rng = np.random.default_rng(3)
    for _ in range(20):
        r = BitVector(tuple(rng.integers(0, 2, code.n).tolist()))
        assert viterbi_decode(trellis, r).best_metric <= r.weight
