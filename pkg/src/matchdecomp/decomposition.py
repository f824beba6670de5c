"""Splitting a path-independent choice function into linear orders.

Any path-independent ``C`` equals a union of maximizations: there is a
family of linear orders ``P_1 .. P_J`` with ``C(S)`` the union of each
order's best worker in ``S`` (the classical Aizerman-Malishevski form).

``decompose`` builds that family constructively.  Starting from the full
universe it repeatedly picks one currently chosen worker, removes it, and
recurses; every maximal pick sequence, read as a preference list, is one
order of the family.  Workers never picked along a branch are unacceptable
in that branch's order.  ``recompose`` is the inverse direction and works
for any order family, path independent or not.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .bitsets import bit, iter_indices
from .caps import DEFAULT_CAPS, Caps, require_universe
from .choices import AxiomReport, ChoiceFunction, LinearOrder, check_path_independence
from .errors import (
    AxiomViolationError,
    CapExceededError,
    DecompositionMismatchError,
    MarketValidationError,
)
from .markets import ManyToOneMarket


class DuplicateOrderWarning(UserWarning):
    """Recomposing a family that lists the same order twice."""


@dataclass(frozen=True)
class Decomposition:
    """Per-firm order families for a whole market.

    ``per_firm[i][j]`` is firm ``i``'s copy number ``j + 1``; copy numbers
    are 1-based everywhere user-facing.
    """

    per_firm: tuple[tuple[LinearOrder, ...], ...]

    def __post_init__(self):
        for orders in self.per_firm:
            if len(set(orders)) != len(orders):
                raise MarketValidationError("decomposition lists an order twice")


def recompose(
    orders, universe_size: int, warn_duplicates: bool = True
) -> ChoiceFunction:
    """Union-of-orders choice function for an arbitrary order family."""
    orders = tuple(orders)
    if warn_duplicates and len(set(orders)) != len(orders):
        warnings.warn(
            "duplicate orders are redundant in a union", DuplicateOrderWarning
        )
    return ChoiceFunction.from_orders(orders, universe_size)


def decompose(
    cf: ChoiceFunction,
    explicit: tuple[LinearOrder, ...] | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> list[LinearOrder]:
    """All distinct orders realizable by maximal pick sequences of ``cf``.

    The result is sorted lexicographically by worker index sequence, unless
    ``explicit`` supplies the desired indexing, in which case it is
    validated to be exactly the same set of orders and returned as given.
    Raises AxiomViolationError when ``cf`` is not path independent and
    CapExceededError when more than ``caps.max_orders`` distinct orders
    appear.
    """
    pi = check_path_independence(cf, caps)
    if not pi.passed:
        raise AxiomViolationError(
            "decomposition requires a path-independent choice function", pi
        )
    table = cf._full_table
    found: set[tuple[int, ...]] = set()
    max_orders = caps.max_orders

    def walk(remaining: int, prefix: list[int]) -> None:
        chosen = table[remaining]
        if not chosen:
            if len(found) >= max_orders and tuple(prefix) not in found:
                raise CapExceededError(
                    f"decomposition exceeds {max_orders} distinct orders"
                )
            found.add(tuple(prefix))
            return
        for w in iter_indices(chosen):
            prefix.append(w)
            walk(remaining & ~bit(w), prefix)
            prefix.pop()

    walk((1 << cf.universe_size) - 1, [])
    result = [LinearOrder(seq) for seq in sorted(found)]

    report = verify_decomposition(cf, tuple(result), caps)
    if not report.passed:
        raise DecompositionMismatchError(
            f"internal error: decomposition fails to recompose at witness {report.witness}"
        )

    if explicit is not None:
        explicit = tuple(explicit)
        if len(set(explicit)) != len(explicit):
            raise MarketValidationError("explicit copy indexing repeats an order")
        if set(explicit) != set(result):
            raise DecompositionMismatchError(
                "explicit copy indexing is not the decomposition order set"
            )
        return list(explicit)
    return result


def verify_decomposition(
    cf: ChoiceFunction, orders: tuple[LinearOrder, ...], caps: Caps = DEFAULT_CAPS
) -> AxiomReport:
    """Check that the union of the orders' maxima equals ``cf`` menu by menu."""
    require_universe(cf.universe_size, caps)
    table = cf._full_table
    for menu in range(len(table)):
        union = 0
        for order in orders:
            best = order.best_in(menu)
            if best is not None:
                union |= 1 << best
        if union != table[menu]:
            return AxiomReport(
                "decomposition",
                False,
                {"menu": menu, "expected": table[menu], "actual": union},
            )
    return AxiomReport("decomposition", True)


def decompose_market(
    market: ManyToOneMarket,
    explicit: dict[int, tuple[LinearOrder, ...]] | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> Decomposition:
    """Decompose every firm, honouring explicit per-firm copy indexing."""
    explicit = explicit or {}
    per_firm = []
    for i in range(len(market.firms)):
        orders = decompose(market.choice_functions[i], explicit.get(i), caps)
        per_firm.append(tuple(orders))
    return Decomposition(tuple(per_firm))
