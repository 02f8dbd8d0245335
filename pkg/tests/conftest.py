"""Shared fixtures: small hand-authored datasets and enumeration helpers."""

import itertools
import warnings

import numpy as np
import pytest

from harmchoice import ChoiceFunction, GroundSet, Menu, validate_choice


def make_choice(labels, table):
    """Build (ground, choice) from {menu label tuple: pick label} rows.

    Singleton menus may be omitted; the validator fills them in silently.
    """
    ground = GroundSet(tuple(labels))
    rows = []
    for menu_labels, pick in table.items():
        menu = Menu(tuple(ground.index(lab) for lab in menu_labels))
        rows.append((menu, ground.index(pick)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        choice = validate_choice(rows, ground)
    return ground, choice


def iter_all_choices(n):
    """Every choice function on n alternatives, menu masks ascending.

    Independent of the package's census enumeration: plain product over
    member lists.
    """
    size = 1 << n
    member_lists = [
        [e for e in range(n) if (m >> e) & 1] for m in range(1, size)
    ]
    for combo in itertools.product(*member_lists):
        picks = np.empty(size, dtype=np.int16)
        picks[0] = -1
        picks[1:] = combo
        yield ChoiceFunction(n, picks)


def random_choice(rng, n):
    size = 1 << n
    picks = np.empty(size, dtype=np.int16)
    picks[0] = -1
    for m in range(1, size):
        members = [e for e in range(n) if (m >> e) & 1]
        picks[m] = members[rng.integers(0, len(members))]
    return ChoiceFunction(n, picks)


@pytest.fixture
def donation_choice():
    """Money kept vs donated: the chooser keeps it all only when every
    amount is on the table."""
    return make_choice(
        ("0", "5", "20"),
        {
            ("0", "5", "20"): "0",
            ("0", "5"): "5",
            ("0", "20"): "20",
            ("5", "20"): "5",
        },
    )


@pytest.fixture
def diet_choice():
    """Tasty food wins from the full menu, lighter dishes from the rest."""
    return make_choice(
        ("l", "r", "s"),
        {
            ("l", "r", "s"): "l",
            ("l", "r"): "r",
            ("l", "s"): "s",
            ("r", "s"): "s",
        },
    )


@pytest.fixture
def projects_choice():
    """Four projects by payoff; confidence swings pick different tiers."""
    return make_choice(
        ("h", "mh", "ml", "l"),
        {
            ("h", "mh", "ml", "l"): "h",
            ("h", "mh", "ml"): "ml",
            ("h", "mh", "l"): "mh",
            ("h", "ml", "l"): "h",
            ("mh", "ml", "l"): "ml",
            ("h", "mh"): "h",
            ("h", "ml"): "ml",
            ("h", "l"): "h",
            ("mh", "ml"): "mh",
            ("mh", "l"): "l",
            ("ml", "l"): "ml",
        },
    )


@pytest.fixture
def cycle3_choice():
    """Three alternatives with a single reversal between {x,y} and the full menu."""
    return make_choice(
        ("x", "y", "z"),
        {
            ("x", "y", "z"): "x",
            ("x", "y"): "y",
            ("y", "z"): "z",
            ("x", "z"): "x",
        },
    )


@pytest.fixture
def erratic4_choice():
    """Four alternatives whose reversals co-select every pair."""
    return make_choice(
        ("w", "x", "y", "z"),
        {
            ("w", "x", "y", "z"): "w",
            ("w", "x", "y"): "x",
            ("w", "x", "z"): "z",
            ("w", "y", "z"): "y",
            ("x", "y", "z"): "x",
            ("w", "x"): "w",
            ("w", "y"): "w",
            ("w", "z"): "w",
            ("x", "y"): "y",
            ("x", "z"): "x",
            ("y", "z"): "z",
        },
    )
