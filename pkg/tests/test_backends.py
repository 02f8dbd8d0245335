"""The jitted kernels and the numpy fallbacks must agree bit for bit."""

import itertools

import numpy as np
import pytest

from harmchoice import HAVE_NUMBA, active_backend, set_backend
from harmchoice import _kernels
from harmchoice._backend import ENV_BACKEND
from conftest import random_choice

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


@pytest.fixture
def both_backends():
    def run(fn):
        set_backend("numba")
        try:
            a = fn()
        finally:
            set_backend(None)
        set_backend("numpy")
        try:
            b = fn()
        finally:
            set_backend(None)
        return a, b

    return run


def _random_batch(rng, n, count):
    return np.vstack([random_choice(rng, n).picks_array for _ in range(count)])


@needs_numba
class TestKernelAgreement:
    def test_order_scores(self, both_backends):
        rng = np.random.default_rng(71)
        for n in (2, 3, 4, 5, 6):
            picks = random_choice(rng, n).picks_array
            orders = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
            a, b = both_backends(lambda: _kernels.order_scores(picks, orders))
            assert np.array_equal(a, b)

    def test_brute_sp_batch(self, both_backends):
        rng = np.random.default_rng(72)
        for n in (2, 3, 4, 5):
            batch = _random_batch(rng, n, 16)
            orders = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
            a, b = both_backends(lambda: _kernels.brute_sp_batch(batch, orders))
            assert np.array_equal(a, b)

    def test_pair_masks(self, both_backends):
        rng = np.random.default_rng(73)
        for n in (2, 3, 4, 5, 6):
            batch = _random_batch(rng, n, 24)
            a, b = both_backends(lambda: _kernels.pair_masks(batch, n))
            assert np.array_equal(a, b)

    def test_count_inconsistent(self, both_backends):
        rng = np.random.default_rng(74)
        for n in (2, 3, 4, 5):
            batch = _random_batch(rng, n, 64)
            a, b = both_backends(lambda: _kernels.count_inconsistent(batch, n))
            assert a == b

    def test_decode_choices(self, both_backends):
        from harmchoice.census import _menu_layout

        for n in (2, 3, 4):
            masks, sizes, members = _menu_layout(n)
            a, b = both_backends(
                lambda: _kernels.decode_choices(7, 23, sizes, members, masks, n)
            )
            assert np.array_equal(a, b)


class TestSelection:
    def test_env_variable_selects(self, monkeypatch):
        monkeypatch.setenv(ENV_BACKEND, "numpy")
        assert active_backend() == "numpy"

    def test_env_variable_validated(self, monkeypatch):
        monkeypatch.setenv(ENV_BACKEND, "fortran")
        with pytest.raises(ValueError):
            active_backend()

    def test_override_beats_env(self, monkeypatch):
        monkeypatch.setenv(ENV_BACKEND, "numpy")
        set_backend("numpy")
        try:
            assert active_backend() == "numpy"
        finally:
            set_backend(None)

    def test_invalid_override_rejected(self):
        with pytest.raises(ValueError):
            set_backend("cython")

    @needs_numba
    def test_default_prefers_numba(self, monkeypatch):
        monkeypatch.delenv(ENV_BACKEND, raising=False)
        assert active_backend() == "numba"


@needs_numba
def test_results_identical_through_public_api(monkeypatch, projects_choice):
    """The same survey under either backend yields identical reports."""
    import json

    from harmchoice import enumerate_census, sample_census, sp_bruteforce

    _, c = projects_choice
    outputs = {}
    for backend in ("numba", "numpy"):
        set_backend(backend)
        try:
            outputs[backend] = json.dumps(
                {
                    "sp": sp_bruteforce(c).to_dict(),
                    "census": enumerate_census(3).to_dict(),
                    "sample": sample_census(4, 4000, seed=13).to_dict(),
                }
            )
        finally:
            set_backend(None)
    assert outputs["numba"] == outputs["numpy"]
