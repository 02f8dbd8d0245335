"""Surveys of choice space and generators of self-punishing choices.

The exact census classifies every choice function on a small ground set by
its degree; the sampled census estimates how common the maximal degree is on
larger ground sets. Both are chunked deterministically, so worker count
never changes a report. Generators run the model forward: simulated choosers
applying distortion policies, and an explicit family whose reversals touch
every alternative pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping

import numpy as np

from . import _kernels
from ._parallel import index_chunks, map_chunks, resolve_workers
from .axioms import sp_from_pairs
from .core import (
    ChoiceFunction,
    GroundSet,
    LinearOrder,
    Menu,
    all_menu_masks,
    require_enumerable,
)
from .errors import GroundSetTooLarge, IndexOutOfRange, NoCharacterizingJ
from .rationalize import distortion_max_tables

#: Exact enumeration of all choice functions is gated at this size.
MAX_EXACT_CENSUS_N = 4

#: Seed used by randomized operations when none is given.
DEFAULT_SEED = 1729

_Z95 = 1.96
_CENSUS_CHUNK = 4096
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class CensusReport:
    """Exact counts or a sampled estimate of choice-space composition.

    Exact mode fills ``counts_by_sp`` for every degree; sampled mode counts
    only the maximal degree (via the inconsistency test) and carries a 95%
    normal-approximation half-width for the fraction.
    """

    n: int
    total: int
    mode: str  # "exact" | "sampled"
    counts_by_sp: Mapping[int, int]
    strongly_harmful_fraction: float
    half_width: float | None = None
    seed: int | None = None
    samples: int | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "n": self.n,
            "mode": self.mode,
            "total": self.total,
            "counts_by_sp": {str(k): int(v) for k, v in sorted(self.counts_by_sp.items())},
            "strongly_harmful_fraction": self.strongly_harmful_fraction,
        }
        if self.mode == "sampled":
            out["half_width"] = self.half_width
            out["seed"] = self.seed
            out["samples"] = self.samples
        return out


def total_choice_functions(n: int) -> int:
    """Exact number of choice functions: the product over menus of |A|."""
    require_enumerable(n)
    return math.prod(pow(s, math.comb(n, s)) for s in range(1, n + 1))


def _menu_layout(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical menu masks, their sizes, and a padded member table."""
    masks = np.array(all_menu_masks(n), dtype=np.int64)
    sizes = np.array([int(m).bit_count() for m in masks], dtype=np.int64)
    members = np.zeros((len(masks), n), dtype=np.int16)
    for j, m in enumerate(masks):
        row = [e for e in range(n) if (int(m) >> e) & 1]
        members[j, : len(row)] = row
    return masks, sizes, members


@lru_cache(maxsize=None)
def _sp_table(n: int) -> np.ndarray:
    """Degree for every possible co-selected-pair bitmask."""
    pair_list = list(combinations(range(n), 2))
    tab = np.empty(1 << len(pair_list), dtype=np.int8)
    for pm in range(tab.shape[0]):
        pairs = tuple(pair for t, pair in enumerate(pair_list) if (pm >> t) & 1)
        tab[pm] = sp_from_pairs(pairs, n)
    return tab


def enumerate_census(n: int, workers: int | None = None) -> CensusReport:
    """Classify every choice function on n alternatives by its degree."""
    if n < 2:
        raise ValueError("the census needs at least two alternatives")
    if n > MAX_EXACT_CENSUS_N:
        raise GroundSetTooLarge(
            f"exact census is capped at n <= {MAX_EXACT_CENSUS_N}, got n = {n}"
        )
    masks, sizes, members = _menu_layout(n)
    total = total_choice_functions(n)
    table = _sp_table(n)

    def work(chunk: tuple[int, int]) -> np.ndarray:
        start, stop = chunk
        picks_mat = _kernels.decode_choices(start, stop, sizes, members, masks, n)
        pm = _kernels.pair_masks(picks_mat, n)
        values = table[pm]
        if (values < 0).any():
            raise NoCharacterizingJ("unclassifiable reversal structure; this cannot happen")
        return np.bincount(values, minlength=n)

    chunks = index_chunks(total, _CENSUS_CHUNK)
    counts = sum(map_chunks(work, chunks, resolve_workers(workers)))
    counts_by_sp = {i: int(counts[i]) for i in range(n)}
    assert sum(counts_by_sp.values()) == total
    return CensusReport(
        n=n,
        total=total,
        mode="exact",
        counts_by_sp=counts_by_sp,
        strongly_harmful_fraction=counts_by_sp[n - 1] / total,
    )


def _sample_chunk(n: int) -> int:
    # fixed per n so chunk boundaries (and the per-chunk RNG keys) never move
    return max(1024, 1 << max(0, 22 - n))


def sample_census(
    n: int, samples: int, seed: int = DEFAULT_SEED, workers: int | None = None
) -> CensusReport:
    """Estimate the strongly harmful fraction from uniform random choices.

    Drawing each menu's pick uniformly over its members, independently
    across menus, is exactly a uniform draw over whole choice functions.
    Each fixed-size chunk gets its own counter-based generator keyed by
    (seed, chunk index), so identical (n, samples, seed) reproduce identical
    estimates at any worker count.
    """
    require_enumerable(n)
    if n < 2:
        raise ValueError("sampling needs at least two alternatives")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    masks, sizes, members = _menu_layout(n)
    masks_int = [int(m) for m in masks]
    chunk_size = _sample_chunk(n)

    def work(chunk: tuple[int, int]) -> int:
        start, stop = chunk
        count = stop - start
        key = np.array([seed & _MASK64, start // chunk_size], dtype=np.uint64)
        rng = np.random.Generator(np.random.Philox(key=key))
        picks_mat = np.zeros((count, 1 << n), dtype=np.int16)
        for j, mask in enumerate(masks_int):
            digits = rng.integers(0, sizes[j], size=count)
            picks_mat[:, mask] = members[j, digits]
        return _kernels.count_inconsistent(picks_mat, n)

    chunks = index_chunks(samples, chunk_size)
    hits = sum(map_chunks(work, chunks, resolve_workers(workers)))
    fraction = hits / samples
    half_width = _Z95 * math.sqrt(fraction * (1.0 - fraction) / samples)
    return CensusReport(
        n=n,
        total=total_choice_functions(n),
        mode="sampled",
        counts_by_sp={n - 1: hits},
        strongly_harmful_fraction=fraction,
        half_width=half_width,
        seed=seed,
        samples=samples,
    )


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class FixedIndexPolicy:
    """Every menu uses the same distortion index."""

    index: int


@dataclass(frozen=True)
class UniformIndexPolicy:
    """Each menu draws its index uniformly from 0..cap, independently."""

    cap: int


@dataclass(frozen=True)
class ExplicitIndexPolicy:
    """Explicit per-menu indices; menus not listed default to index 0."""

    assignments: tuple[tuple[int, int], ...]  # (menu mask, index), sorted

    @classmethod
    def from_menus(cls, mapping: Mapping[Menu, int]) -> "ExplicitIndexPolicy":
        pairs = sorted((menu.mask, int(i)) for menu, i in mapping.items())
        return cls(assignments=tuple(pairs))

    def lookup(self) -> dict[int, int]:
        return dict(self.assignments)


IndexPolicy = FixedIndexPolicy | UniformIndexPolicy | ExplicitIndexPolicy


def generate_harmful(
    order: LinearOrder,
    policy: IndexPolicy,
    seed: int = DEFAULT_SEED,
) -> ChoiceFunction:
    """Simulate a self-punishing chooser over every menu.

    Each menu's pick maximizes the policy's distortion of the base order, so
    the output's degree never exceeds the largest index the policy can emit.
    """
    n = order.n
    require_enumerable(n)
    masks = all_menu_masks(n)

    def check(i: int) -> int:
        if not 0 <= i <= n - 1:
            raise IndexOutOfRange(f"policy index {i} outside 0..{n - 1}")
        return i

    if isinstance(policy, FixedIndexPolicy):
        indices = [check(policy.index)] * len(masks)
    elif isinstance(policy, UniformIndexPolicy):
        check(policy.cap)
        key = np.array([seed & _MASK64, 0], dtype=np.uint64)
        rng = np.random.Generator(np.random.Philox(key=key))
        indices = [int(i) for i in rng.integers(0, policy.cap + 1, size=len(masks))]
    elif isinstance(policy, ExplicitIndexPolicy):
        lookup = policy.lookup()
        unknown = set(lookup) - set(masks)
        if unknown:
            raise ValueError("policy assigns an index to a menu outside the ground set")
        indices = [check(lookup.get(mask, 0)) for mask in masks]
    else:
        raise TypeError(f"unsupported policy {policy!r}")

    tabs = distortion_max_tables(order)
    picks = np.full(1 << n, -1, dtype=np.int16)
    for mask, i in zip(masks, indices):
        picks[mask] = tabs[i, mask]
    return ChoiceFunction(n, picks)


def inconsistent_ground_set(k: int) -> GroundSet:
    """Labels for the explicit inconsistent family on 2k alternatives."""
    if k < 2:
        raise ValueError("the construction needs k >= 2")
    return GroundSet(("x*",) + tuple(f"x{i}" for i in range(1, 2 * k)))


def construct_inconsistent(k: int) -> ChoiceFunction:
    """A choice on 2k alternatives whose reversals touch every pair.

    Alternative 0 plays a pivot role: it is picked from the full menu, while
    the menus missing exactly one alternative and the pivot-free menus
    missing two select the indexed alternatives cyclically. Everything left
    unconstrained falls back to smallest-id maximization.
    """
    if k < 2:
        raise ValueError("the construction needs k >= 2")
    n = 2 * k
    require_enumerable(n)
    size = 1 << n
    full = size - 1

    def wrap(j: int) -> int:
        # cycle over 1..2k-1
        return (j - 1) % (n - 1) + 1

    picks = np.full(size, -1, dtype=np.int16)
    picks[full] = 0
    for e in range(1, n):
        picks[full ^ (1 << e)] = wrap(e - 1)
    tail = full ^ 1
    for e in range(1, n):
        picks[tail ^ (1 << e)] = wrap(e + 1)
    remaining = picks == -1
    masks = np.arange(size, dtype=np.int64)
    for e in range(n):
        sel = remaining & (((masks >> e) & 1) == 1)
        picks[sel] = e
        remaining &= ~sel
    return ChoiceFunction(n, picks)
