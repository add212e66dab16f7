import random

import pytest

from powop import _kernels_py, kernels

BACKENDS = kernels.backends()
MODULI = [7, 2**31 - 1, 3**39, 2**62 - 1, 2**62, 13**64]


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("modulus", MODULI)
@pytest.mark.parametrize("sizes", [(1, 1), (3, 5), (20, 33), (90, 40)])
def test_convolution_matches_schoolbook(name, modulus, sizes):
    rng = random.Random(hash((modulus, sizes)) & 0xFFFF)
    a = [rng.randrange(modulus) for _ in range(sizes[0])]
    b = [rng.randrange(modulus) for _ in range(sizes[1])]
    expected = _kernels_py.convolve_mod_schoolbook(a, b, modulus)
    assert BACKENDS[name].convolve_mod(a, b, modulus) == expected


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_extreme_residues(name):
    m = 2**62 - 57
    a = [m - 1] * 64
    expected = _kernels_py.convolve_mod_schoolbook(a, a, m)
    assert BACKENDS[name].convolve_mod(a, a, m) == expected


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_empty(name):
    assert BACKENDS[name].convolve_mod([], [1, 2], 5) == []


def test_kronecker_agrees():
    rng = random.Random(5)
    m = 5**50
    a = [rng.randrange(m) for _ in range(70)]
    b = [rng.randrange(m) for _ in range(3)]
    assert _kernels_py.convolve_mod_kronecker(a, b, m) == _kernels_py.convolve_mod_schoolbook(a, b, m)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_axpy(name):
    acc = [1, 2, 3, 4]
    assert BACKENDS[name].axpy_mod(acc, 3, [5, 6], 1, 7) == [1, (2 + 15) % 7, (3 + 18) % 7, 4]


def test_compiled_backend_built():
    # the extension is optional; when absent the fallback must be selected
    assert kernels.BACKEND in BACKENDS
