"""Ground sets, menus, linear orders, and total choice functions.

Alternatives carry dense integer ids 0..n-1 assigned in ground-set label
order. A menu is a nonempty subset of ids, canonicalized to a sorted member
tuple; it also has a bitmask form (bit ``e`` set iff id ``e`` is a member),
which is how choice functions index their picks internally. All types are
immutable values, safe to share across threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    DatasetWarning,
    DuplicateMenu,
    GroundSetTooLarge,
    MissingMenu,
    PickNotInMenu,
)

#: Menu-enumerating operations refuse ground sets above this size.
MAX_ENUM_N = 20

#: Exhaustive search over all n! base orders is gated at this size.
MAX_BRUTE_N = 8


def require_enumerable(n: int) -> None:
    """Reject ground-set sizes for which 2**n - 1 menus cannot be handled."""
    if n < 1:
        raise ValueError("ground set needs at least one alternative")
    if n > MAX_ENUM_N:
        raise GroundSetTooLarge(
            f"operations over all menus are capped at n <= {MAX_ENUM_N}, got n = {n}"
        )


@dataclass(frozen=True)
class GroundSet:
    """Finite labeled universe of alternatives."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("ground set needs at least one alternative")
        if any(not isinstance(lab, str) or not lab for lab in labels):
            raise ValueError("labels must be nonempty strings")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown alternative {label!r}") from None

    def label(self, alt: int) -> str:
        return self.labels[alt]

    def menus(self) -> Iterator["Menu"]:
        """All nonempty menus, smallest first, ties by member ids."""
        require_enumerable(self.n)
        for mask in all_menu_masks(self.n):
            yield Menu.from_mask(mask)


@dataclass(frozen=True)
class Menu:
    """Nonempty set of alternative ids, canonicalized to a sorted tuple."""

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(self.members))
        if not members:
            raise ValueError("a menu must be nonempty")
        if members[0] < 0:
            raise ValueError("alternative ids are nonnegative")
        if len(set(members)) != len(members):
            raise ValueError("menu members must be distinct")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: int) -> "Menu":
        return cls(tuple(members))

    @classmethod
    def from_mask(cls, mask: int) -> "Menu":
        if mask <= 0:
            raise ValueError("menu bitmask must be positive")
        return cls(tuple(e for e in range(mask.bit_length()) if (mask >> e) & 1))

    @property
    def mask(self) -> int:
        m = 0
        for e in self.members:
            m |= 1 << e
        return m

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.members), self.members)

    def label_list(self, ground: GroundSet) -> list[str]:
        return [ground.label(e) for e in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, alt: object) -> bool:
        return alt in self.members


@dataclass(frozen=True)
class LinearOrder:
    """Strict total order on 0..n-1, stored best-to-worst."""

    ranking: tuple[int, ...]

    def __post_init__(self) -> None:
        ranking = tuple(int(e) for e in self.ranking)
        object.__setattr__(self, "ranking", ranking)
        if sorted(ranking) != list(range(len(ranking))):
            raise ValueError("ranking must be a permutation of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.ranking)

    @property
    def top(self) -> int:
        return self.ranking[0]

    def position(self, alt: int) -> int:
        """0 for the best alternative, n-1 for the worst."""
        return self.ranking.index(alt)

    def prefers(self, a: int, b: int) -> bool:
        return self.position(a) < self.position(b)

    def label_list(self, ground: GroundSet) -> list[str]:
        return [ground.label(e) for e in self.ranking]


class ChoiceFunction:
    """Total map assigning to every nonempty menu one of its members.

    Picks are stored in a flat read-only array indexed by menu bitmask
    (entry 0 is unused). Exactly the 2**n - 1 nonempty menus are defined.
    """

    __slots__ = ("_n", "_picks")

    def __init__(self, n: int, picks: np.ndarray | Iterable[int]):
        require_enumerable(n)
        arr = np.array(picks, dtype=np.int16, copy=True)
        if arr.shape != (1 << n,):
            raise ValueError(f"picks array must have length 2**{n}")
        arr[0] = -1
        vals = arr[1:]
        if ((vals < 0) | (vals >= n)).any():
            raise ValueError("every menu needs a pick in 0..n-1")
        masks = np.arange(1, 1 << n, dtype=np.int64)
        if (((masks >> vals) & 1) == 0).any():
            raise ValueError("some pick is not a member of its menu")
        arr.setflags(write=False)
        self._n = n
        self._picks = arr

    @property
    def n(self) -> int:
        return self._n

    @property
    def picks_array(self) -> np.ndarray:
        """Read-only picks indexed by menu bitmask; entry 0 is -1."""
        return self._picks

    def pick(self, menu: Menu) -> int:
        return int(self._picks[menu.mask])

    def pick_mask(self, mask: int) -> int:
        if not 1 <= mask < (1 << self._n):
            raise ValueError("menu bitmask out of range")
        return int(self._picks[mask])

    def items(self) -> Iterator[tuple[Menu, int]]:
        """(menu, pick) pairs in canonical menu order."""
        for mask in all_menu_masks(self._n):
            yield Menu.from_mask(mask), int(self._picks[mask])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChoiceFunction):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._picks, other._picks)

    def __hash__(self) -> int:
        return hash((self._n, self._picks.tobytes()))

    def __repr__(self) -> str:
        return f"ChoiceFunction(n={self._n})"


@lru_cache(maxsize=None)
def all_menu_masks(n: int) -> tuple[int, ...]:
    """Bitmasks of all nonempty menus, sorted by size then by member ids."""
    require_enumerable(n)
    def key(mask: int) -> tuple[int, tuple[int, ...]]:
        members = tuple(e for e in range(n) if (mask >> e) & 1)
        return (len(members), members)
    return tuple(sorted(range(1, 1 << n), key=key))


def max_of(menu: Menu, order: LinearOrder) -> int:
    """The member of the menu ranked best by the order."""
    mask = menu.mask
    for e in order.ranking:
        if (mask >> e) & 1:
            return e
    raise ValueError("menu contains no alternative of the order's ground set")


def rational_choice(order: LinearOrder) -> ChoiceFunction:
    """The choice a maximizer of ``order`` makes from every menu."""
    n = order.n
    require_enumerable(n)
    size = 1 << n
    picks = np.full(size, -1, dtype=np.int16)
    masks = np.arange(size, dtype=np.int64)
    for e in order.ranking:
        picks[(picks == -1) & (((masks >> e) & 1) == 1)] = e
    return ChoiceFunction(n, picks)


def validate_choice(
    rows: Iterable[tuple[Menu | Iterable[int], int]], ground: GroundSet
) -> ChoiceFunction:
    """Assemble and check a total choice function from (menu, pick) rows.

    Every nonempty menu must appear exactly once with a pick among its
    members. Absent singleton menus are filled in automatically (their pick
    is forced) and reported with a :class:`DatasetWarning`.

    Raises:
        DuplicateMenu: a menu occurs twice.
        PickNotInMenu: a pick is not a member of its menu.
        MissingMenu: a non-singleton menu is absent.
    """
    n = ground.n
    require_enumerable(n)
    size = 1 << n
    picks = np.full(size, -1, dtype=np.int16)
    for menu, pick in rows:
        if not isinstance(menu, Menu):
            menu = Menu(tuple(menu))
        if menu.members[-1] >= n:
            raise ValueError(f"menu {menu.members} lies outside the ground set (n = {n})")
        pick = int(pick)
        if pick not in menu:
            raise PickNotInMenu(
                f"pick {pick} is not a member of menu {{{', '.join(map(str, menu.members))}}}"
            )
        mask = menu.mask
        if picks[mask] != -1:
            raise DuplicateMenu(
                f"menu {{{', '.join(map(str, menu.members))}}} appears more than once"
            )
        picks[mask] = pick
    for e in range(n):
        if picks[1 << e] == -1:
            picks[1 << e] = e
            warnings.warn(
                DatasetWarning(
                    f"singleton menu {{{ground.label(e)}}} was absent; its forced pick was filled in"
                ),
                stacklevel=2,
            )
    missing = np.nonzero(picks[1:] == -1)[0] + 1
    if missing.size:
        menus = sorted((Menu.from_mask(int(m)) for m in missing), key=lambda m: m.sort_key)
        raise MissingMenu(menus[:8], total=int(missing.size))
    return ChoiceFunction(n, picks)
