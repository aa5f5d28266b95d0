import pytest

from qviterbi import builtin_code

# Reference data for the built-in codes, duplicated as literals so the tests
# do not trust the library's own enumeration.
CODESPACE_633 = [
    "000000", "001110", "010101", "100011",
    "011011", "110110", "101101", "111000",
]
MIN_WEIGHT_633 = ["001110", "010101", "100011", "111000"]
PARITY_633 = [
    [0, 1, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0],
    [1, 1, 0, 0, 0, 1],
]

CODESPACE_321 = ["000", "010", "101", "111"]

CODESPACE_CONV = [
    "0000000000", "0000110111", "0011011100", "0011101011",
    "1101110000", "1101000111", "1110101100", "1110011011",
]
MIN_WEIGHT_CONV = ["0000110111", "0011011100", "1101110000"]

BUILTIN_NAMES = ["lbc_321", "lbc_633", "conv_r12_m2"]


@pytest.fixture(scope="session")
def lbc_633():
    return builtin_code("lbc_633")


@pytest.fixture(scope="session")
def lbc_321():
    return builtin_code("lbc_321")


@pytest.fixture(scope="session")
def conv_code():
    return builtin_code("conv_r12_m2")


@pytest.fixture(scope="session")
def all_builtins(lbc_321, lbc_633, conv_code):
    return {"lbc_321": lbc_321, "lbc_633": lbc_633, "conv_r12_m2": conv_code}
