"""Reversal detection and the behavioral axioms on a choice function.

A reversal is a pair of distinct menus whose distinct picks both lie in the
menus' intersection; it is the atomic violation of the weak axiom of
revealed preference (WARP). Every axiom here depends on the choice only
through its co-selected pick pairs, which are computed once per choice and
cached, with actual menu pairs materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .core import ChoiceFunction, GroundSet, Menu, all_menu_masks
from .errors import InvalidJ


@dataclass(frozen=True)
class Reversal:
    """Two menus co-selecting two alternatives from their intersection."""

    menu_a: Menu
    menu_b: Menu
    pick_a: int
    pick_b: int

    def __post_init__(self) -> None:
        if self.menu_a == self.menu_b:
            raise ValueError("a reversal needs two distinct menus")
        if self.pick_a == self.pick_b:
            raise ValueError("a reversal needs two distinct picks")
        inter = self.menu_a.mask & self.menu_b.mask
        if not ((inter >> self.pick_a) & 1 and (inter >> self.pick_b) & 1):
            raise ValueError("both picks must lie in the menus' intersection")

    def to_dict(self, ground: GroundSet | None = None) -> dict:
        if ground is not None:
            return {
                "menu_a": self.menu_a.label_list(ground),
                "pick_a": ground.label(self.pick_a),
                "menu_b": self.menu_b.label_list(ground),
                "pick_b": ground.label(self.pick_b),
            }
        return {
            "menu_a": list(self.menu_a.members),
            "pick_a": self.pick_a,
            "menu_b": list(self.menu_b.members),
            "pick_b": self.pick_b,
        }


@dataclass(frozen=True)
class CnsWitness:
    """Items covering every reversal, each paired with an outside partner.

    ``paired_reversals[h]`` co-selects ``items[h]`` with some alternative
    outside the witness set.
    """

    items: tuple[int, ...]
    paired_reversals: tuple[Reversal, ...]

    def __post_init__(self) -> None:
        if not self.items or len(set(self.items)) != len(self.items):
            raise ValueError("witness items must be nonempty and distinct")
        if len(self.paired_reversals) != len(self.items):
            raise ValueError("one paired reversal per witness item")
        for x, r in zip(self.items, self.paired_reversals):
            picks = {r.pick_a, r.pick_b}
            if x not in picks or picks <= set(self.items):
                raise ValueError("each pairing needs its item plus an outside pick")

    def to_dict(self, ground: GroundSet | None = None) -> dict:
        items = (
            [ground.label(e) for e in self.items] if ground is not None else list(self.items)
        )
        return {
            "items": items,
            "paired_reversals": [r.to_dict(ground) for r in self.paired_reversals],
        }


def _selected_with(c: ChoiceFunction) -> np.ndarray:
    """sel[p, q] is True when some menu containing q has pick p (p != q)."""
    n = c.n
    sel = np.zeros((n, n), dtype=bool)
    picks = c.picks_array[1:]
    masks = np.arange(1, 1 << n, dtype=np.int64)
    for q in range(n):
        has_q = ((masks >> q) & 1) == 1
        sel[np.unique(picks[has_q]), q] = True
    np.fill_diagonal(sel, False)
    return sel


@lru_cache(maxsize=2048)
def coselected_pairs(c: ChoiceFunction) -> tuple[tuple[int, int], ...]:
    """Sorted pairs (p < q) co-selected by some reversal of the choice."""
    sel = _selected_with(c)
    mutual = sel & sel.T
    return tuple(
        (p, q) for p in range(c.n) for q in range(p + 1, c.n) if mutual[p, q]
    )


def find_reversals(c: ChoiceFunction) -> list[Reversal]:
    """Every reversal, each unordered menu pair once, in canonical menu order."""
    n = c.n
    by_pick_with: dict[tuple[int, int], list[int]] = {}
    for mask in range(1, 1 << n):
        p = c.pick_mask(mask)
        for q in range(n):
            if q != p and (mask >> q) & 1:
                by_pick_with.setdefault((p, q), []).append(mask)
    out = []
    for p, q in coselected_pairs(c):
        for a in by_pick_with[(p, q)]:
            for b in by_pick_with[(q, p)]:
                out.append(_orient(Menu.from_mask(a), Menu.from_mask(b), p, q))
    out.sort(key=lambda r: (r.menu_a.sort_key, r.menu_b.sort_key))
    return out


def _orient(menu_p: Menu, menu_q: Menu, p: int, q: int) -> Reversal:
    if menu_p.sort_key <= menu_q.sort_key:
        return Reversal(menu_p, menu_q, p, q)
    return Reversal(menu_q, menu_p, q, p)


def satisfies_warp(c: ChoiceFunction) -> bool:
    """True when the choice has no reversal at all."""
    return not coselected_pairs(c)


def constant_selection_witnesses(c: ChoiceFunction) -> frozenset[int] | None:
    """Alternatives picked in every reversal.

    None when WARP holds (there is nothing to witness) or when no single
    alternative covers all reversals.
    """
    pairs = coselected_pairs(c)
    if not pairs:
        return None
    common = set(pairs[0])
    for p, q in pairs[1:]:
        common &= {p, q}
        if not common:
            return None
    return frozenset(common)


def is_inconsistent(c: ChoiceFunction) -> bool:
    """True when every pair of distinct alternatives is co-selected."""
    return len(coselected_pairs(c)) == comb(c.n, 2)


def _no_small_cover(pairs: Iterable[tuple[int, int]], n: int, j: int) -> bool:
    """No set of fewer than j alternatives touches every co-selected pair.

    The empty set is included, so this is False when there are no pairs.
    """
    pairs = tuple(pairs)
    for size in range(j):
        for d in combinations(range(n), size):
            dset = set(d)
            if all(p in dset or q in dset for p, q in pairs):
                return False
    return True


def _covers_all(pairs: Iterable[tuple[int, int]], sset: frozenset[int]) -> bool:
    return all(p in sset or q in sset for p, q in pairs)


def _outside_partner(
    pairs: Iterable[tuple[int, int]], x: int, sset: frozenset[int]
) -> int | None:
    """First alternative outside sset co-selected with x, scanning pairs in order."""
    for p, q in pairs:
        if p == x and q not in sset:
            return q
        if q == x and p not in sset:
            return p
    return None


def is_cns_witness_set(c: ChoiceFunction, items: Iterable[int]) -> bool:
    """Whether this exact item set certifies nonreciprocal selection.

    Requires: no smaller set touches every reversal, the set touches all of
    them, and each member is co-selected with an alternative outside the set.
    """
    items = tuple(items)
    n = c.n
    j = len(items)
    if not 1 <= j <= n - 1 or len(set(items)) != j:
        return False
    if any(not 0 <= x < n for x in items):
        return False
    pairs = coselected_pairs(c)
    if not pairs:
        return False
    sset = frozenset(items)
    return (
        _no_small_cover(pairs, n, j)
        and _covers_all(pairs, sset)
        and all(_outside_partner(pairs, x, sset) is not None for x in items)
    )


def check_cns(c: ChoiceFunction, j: int) -> CnsWitness | None:
    """Witness that WARP fails under constant nonreciprocal selection of j items.

    Two conditions: no set of fewer than j alternatives touches every
    reversal, and some j-set touches all of them with each member co-selected
    alongside an alternative outside the set. Candidate sets are scanned in
    lexicographic order and partners in pair order, so the returned witness
    is deterministic. Returns None when the property does not hold at j.
    """
    n = c.n
    if not 1 <= j <= n - 1:
        raise InvalidJ(f"witness size {j} outside 1..{n - 1}")
    pairs = coselected_pairs(c)
    if not pairs:
        return None
    if not _no_small_cover(pairs, n, j):
        return None
    for s in combinations(range(n), j):
        sset = frozenset(s)
        if not _covers_all(pairs, sset):
            continue
        partners = []
        for x in s:
            y = _outside_partner(pairs, x, sset)
            if y is None:
                break
            partners.append((x, y))
        if len(partners) < j:
            continue
        paired = tuple(_first_reversal_for_pair(c, x, y) for x, y in partners)
        return CnsWitness(items=s, paired_reversals=paired)
    return None


def _first_reversal_for_pair(c: ChoiceFunction, p: int, q: int) -> Reversal:
    """Canonical reversal co-selecting {p, q}: earliest menus in menu order."""
    menu_p = menu_q = None
    for mask in all_menu_masks(c.n):
        pick = c.pick_mask(mask)
        if menu_p is None and pick == p and (mask >> q) & 1:
            menu_p = Menu.from_mask(mask)
        if menu_q is None and pick == q and (mask >> p) & 1:
            menu_q = Menu.from_mask(mask)
        if menu_p is not None and menu_q is not None:
            return _orient(menu_p, menu_q, p, q)
    raise ValueError(f"pair ({p}, {q}) is not co-selected by this choice")


def sp_from_pairs(pairs: Iterable[tuple[int, int]], n: int) -> int:
    """Self-punishment degree read off the co-selected pairs alone.

    0 without reversals, otherwise the unique witness size whose two
    conditions hold; -1 when none does (not expected for pairs arising from
    an actual choice).
    """
    pairs = tuple(pairs)
    if not pairs:
        return 0
    for j in range(1, n):
        if not _no_small_cover(pairs, n, j):
            continue
        for s in combinations(range(n), j):
            sset = frozenset(s)
            if _covers_all(pairs, sset) and all(
                _outside_partner(pairs, x, sset) is not None for x in s
            ):
                return j
    return -1
