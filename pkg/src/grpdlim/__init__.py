"""Computational engine for finite groupoids: homotopy limits via the
equalizer formula, explicit models (pullbacks, fixed points, loops),
nonabelian H^1, filtered colimits, and presheaves on finite sites."""

from .core import (
    Budget,
    BudgetExceeded,
    CatFunctor,
    FiniteCategory,
    FiniteGroup,
    Groupoid,
    NatTransformation,
    action_groupoid,
    delooping,
    discrete_groupoid,
    terminal_groupoid,
    translation_groupoid,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "CatFunctor",
    "FiniteCategory",
    "FiniteGroup",
    "Groupoid",
    "NatTransformation",
    "action_groupoid",
    "delooping",
    "discrete_groupoid",
    "terminal_groupoid",
    "translation_groupoid",
]
