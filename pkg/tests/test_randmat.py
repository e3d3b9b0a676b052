import numpy as np
import pytest

from antinorm.errors import ParameterError
from antinorm.randmat import (parse_spectrum_law, random_contraction, random_expansive, random_psd,
                              random_psd_block, random_unitary, trial_rng)
from antinorm.spectral import eigvalsh, frob, singular_values


def test_custom_one_by_one():
    m = random_psd(1, "custom(2.0)", np.random.default_rng(0))
    np.testing.assert_allclose(m, [[2.0]])


def test_same_seed_same_matrix():
    a = random_psd(4, "exp", trial_rng(5, "x", 1))
    b = random_psd(4, "exp", trial_rng(5, "x", 1))
    np.testing.assert_array_equal(a, b)
    c = random_psd(4, "exp", trial_rng(5, "x", 2))
    assert not np.array_equal(a, c)


def test_spectrum_laws(rng):
    np.testing.assert_allclose(eigvalsh(random_psd(3, "custom(3, 2, 1)", rng)), [3, 2, 1], atol=1e-13)
    w = eigvalsh(random_psd(5, "rank_deficient(2)", rng))
    assert np.sum(np.abs(w) < 1e-12) >= 2
    assert str(parse_spectrum_law("rank_deficient(k=2)")) == "rank_deficient(2)"
    for bad in ("nope", "rank_deficient(-1)", "custom(-1)", "custom()"):
        with pytest.raises(ParameterError):
            parse_spectrum_law(bad)
    with pytest.raises(ParameterError):
        random_psd(2, "custom(1, 2, 3)", rng)


def test_unitary_contraction_expansive(rng):
    u = random_unitary(6, rng)
    assert frob(u.conj().T @ u - np.eye(6)) < 1e-12
    assert singular_values(random_contraction(5, rng))[0] < 1
    assert singular_values(random_expansive(5, rng))[-1] >= 1 - 1e-12


def test_block_parts(rng):
    m, a, x, b = random_psd_block(2, 3, rng)
    assert m.shape == (5, 5) and a.shape == (2, 2) and x.shape == (2, 3) and b.shape == (3, 3)
    np.testing.assert_array_equal(m[2:, 2:], b)
