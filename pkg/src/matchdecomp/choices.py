"""Choice functions over a finite worker universe, plus their axioms.

A firm's hiring behaviour is a map ``C`` from worker subsets to worker
subsets with ``C(S) <= S``.  Three interchangeable representations are
supported:

``table``
    An explicit value for every one of the ``2**k`` menus.
``subset_ranking``
    A strict ranking of some nonempty subsets; ``C(S)`` is the best ranked
    subset fully contained in ``S``, or the empty set when none is.
``orders``
    A family of linear orders; ``C(S)`` is the union of each order's best
    worker present in ``S``.

Any subset or worker a representation leaves out is unacceptable, i.e.
strictly worse than staying empty.

The axioms checked here, each by exhaustive menu enumeration:

* substitutability: ``w in C(W)`` implies ``w in C(W - {w'})``;
* consistency: ``C(W) <= W' <= W`` implies ``C(W') = C(W)``;
* path independence: ``C(W | W') = C(C(W) | W')`` which is equivalent to
  substitutability plus consistency;
* law of aggregate demand: ``W'' <= W'`` implies ``|C(W'')| <= |C(W')|``.

Failed checks carry a replayable witness, keyed by menu masks and worker
indices.  Witnesses are deterministic: menus are scanned in ascending mask
order, workers in ascending index order, and intermediate menus through a
descending submask walk.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .bitsets import bit, iter_indices
from .caps import DEFAULT_CAPS, Caps, require_universe
from .errors import MarketValidationError

TABLE = "table"
SUBSET_RANKING = "subset_ranking"
ORDERS = "orders"


@dataclass(frozen=True)
class LinearOrder:
    """A strict preference list of worker indices, best first.

    Workers not listed are unacceptable.  An empty ranking is legal and
    never selects anyone.
    """

    ranking: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.ranking)) != len(self.ranking):
            raise MarketValidationError(f"duplicate worker in order {self.ranking}")
        if any(w < 0 for w in self.ranking):
            raise MarketValidationError(f"negative worker index in {self.ranking}")

    @cached_property
    def rank(self) -> dict[int, int]:
        return {w: pos for pos, w in enumerate(self.ranking)}

    @cached_property
    def mask(self) -> int:
        m = 0
        for w in self.ranking:
            m |= 1 << w
        return m

    def best_in(self, mask: int) -> int | None:
        """First ranked worker whose bit is set in ``mask``, if any."""
        for w in self.ranking:
            if mask >> w & 1:
                return w
        return None


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one axiom check.

    ``witness`` is ``None`` on a pass.  On a failure it holds the first
    violation in scan order; masks and indices use the checked function's
    own universe, so the violation can be replayed against ``choose``.
    """

    axiom: str
    passed: bool
    witness: dict[str, int] | None = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class ChoiceFunction:
    """One firm's choice behaviour in one of the three representations.

    Use the ``from_*`` constructors; they validate the payload.  ``choose``
    evaluates the representation directly, so no exponential table is built
    unless :func:`canonicalize` or an axiom check asks for one.
    """

    universe_size: int
    kind: str
    table: tuple[int, ...] | None = None
    ranking: tuple[int, ...] | None = None
    orders: tuple[LinearOrder, ...] | None = None

    @staticmethod
    def from_table(entries, universe_size: int) -> "ChoiceFunction":
        entries = tuple(entries)
        if universe_size < 0:
            raise MarketValidationError("universe size must be nonnegative")
        if len(entries) != 1 << universe_size:
            raise MarketValidationError(
                f"table needs {1 << universe_size} entries, got {len(entries)}"
            )
        for menu, chosen in enumerate(entries):
            if chosen & ~menu:
                raise MarketValidationError(
                    f"table chooses outside its menu: C({menu:#b}) = {chosen:#b}"
                )
        return ChoiceFunction(universe_size, TABLE, table=entries)

    @staticmethod
    def from_subset_ranking(masks, universe_size: int) -> "ChoiceFunction":
        masks = tuple(masks)
        full = (1 << universe_size) - 1
        seen = set()
        for m in masks:
            if m == 0:
                raise MarketValidationError("subset ranking may not list the empty set")
            if m & ~full:
                raise MarketValidationError(f"subset {m:#b} is outside the universe")
            if m in seen:
                raise MarketValidationError(f"duplicate subset {m:#b} in ranking")
            seen.add(m)
        return ChoiceFunction(universe_size, SUBSET_RANKING, ranking=masks)

    @staticmethod
    def from_orders(orders, universe_size: int) -> "ChoiceFunction":
        orders = tuple(orders)
        full = (1 << universe_size) - 1
        for o in orders:
            if o.mask & ~full:
                raise MarketValidationError(
                    f"order {o.ranking} mentions workers outside the universe"
                )
        return ChoiceFunction(universe_size, ORDERS, orders=orders)

    def choose(self, mask: int) -> int:
        """Evaluate the choice on a menu given as a bitmask."""
        if mask < 0 or mask >> self.universe_size:
            raise MarketValidationError(
                f"menu {mask:#b} is outside a {self.universe_size}-worker universe"
            )
        if self.kind == TABLE:
            return self.table[mask]
        if self.kind == SUBSET_RANKING:
            for entry in self.ranking:
                if entry & mask == entry:
                    return entry
            return 0
        chosen = 0
        for order in self.orders:
            best = order.best_in(mask)
            if best is not None:
                chosen |= 1 << best
        return chosen

    @cached_property
    def _full_table(self) -> tuple[int, ...]:
        # Callers guard the 2**k cost through require_universe.
        if self.kind == TABLE:
            return self.table
        choose = self.choose
        return tuple(choose(m) for m in range(1 << self.universe_size))


def canonicalize(cf: ChoiceFunction, caps: Caps = DEFAULT_CAPS) -> ChoiceFunction:
    """Return an equivalent explicit-table choice function."""
    require_universe(cf.universe_size, caps)
    if cf.kind == TABLE:
        return cf
    return ChoiceFunction.from_table(cf._full_table, cf.universe_size)


def check_substitutability(cf: ChoiceFunction, caps: Caps = DEFAULT_CAPS) -> AxiomReport:
    """Chosen workers stay chosen when someone else leaves the menu."""
    require_universe(cf.universe_size, caps)
    table = cf._full_table
    for menu in range(len(table)):
        chosen = table[menu]
        if not chosen:
            continue
        for w in iter_indices(chosen):
            others = menu & ~bit(w)
            for removed in iter_indices(others):
                if not table[menu & ~bit(removed)] >> w & 1:
                    return AxiomReport(
                        "substitutability",
                        False,
                        {"menu": menu, "worker": w, "removed": removed},
                    )
    return AxiomReport("substitutability", True)


def check_consistency(cf: ChoiceFunction, caps: Caps = DEFAULT_CAPS) -> AxiomReport:
    """Dropping unchosen workers from the menu never changes the choice."""
    require_universe(cf.universe_size, caps)
    table = cf._full_table
    for menu in range(len(table)):
        chosen = table[menu]
        rest = menu & ~chosen
        sub = rest
        while True:
            submenu = chosen | sub
            if submenu != menu and table[submenu] != chosen:
                return AxiomReport(
                    "consistency", False, {"menu": menu, "submenu": submenu}
                )
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return AxiomReport("consistency", True)


def check_path_independence(cf: ChoiceFunction, caps: Caps = DEFAULT_CAPS) -> AxiomReport:
    """Direct pairwise check of ``C(W | W') == C(C(W) | W')``.

    Quadratic in the number of menus; meant for small universes.  The
    equivalence with substitutability plus consistency is exercised in the
    test suite rather than assumed here.
    """
    require_universe(cf.universe_size, caps)
    table = cf._full_table
    n = len(table)
    for first in range(n):
        first_chosen = table[first]
        for second in range(n):
            if table[first | second] != table[first_chosen | second]:
                return AxiomReport(
                    "path-independence", False, {"first": first, "second": second}
                )
    return AxiomReport("path-independence", True)


def check_lad(cf: ChoiceFunction, caps: Caps = DEFAULT_CAPS) -> AxiomReport:
    """Law of aggregate demand: larger menus never yield smaller hires."""
    require_universe(cf.universe_size, caps)
    table = cf._full_table
    for larger in range(len(table)):
        hired = table[larger].bit_count()
        sub = larger
        while True:
            if table[sub].bit_count() > hired:
                return AxiomReport(
                    "law-of-aggregate-demand",
                    False,
                    {"smaller": sub, "larger": larger},
                )
            if sub == 0:
                break
            sub = (sub - 1) & larger
    return AxiomReport("law-of-aggregate-demand", True)


def replay_witness(cf: ChoiceFunction, report: AxiomReport) -> bool:
    """Re-evaluate a failure witness; True when it still shows the violation."""
    if report.passed or report.witness is None:
        return False
    w = report.witness
    if report.axiom == "substitutability":
        menu, worker, removed = w["menu"], w["worker"], w["removed"]
        if removed == worker or not menu >> removed & 1:
            return False
        return bool(
            cf.choose(menu) >> worker & 1
            and not cf.choose(menu & ~bit(removed)) >> worker & 1
        )
    if report.axiom == "consistency":
        menu, submenu = w["menu"], w["submenu"]
        chosen = cf.choose(menu)
        nested = chosen & ~submenu == 0 and submenu & ~menu == 0
        return nested and cf.choose(submenu) != chosen
    if report.axiom == "path-independence":
        first, second = w["first"], w["second"]
        return cf.choose(first | second) != cf.choose(cf.choose(first) | second)
    if report.axiom == "law-of-aggregate-demand":
        smaller, larger = w["smaller"], w["larger"]
        if smaller & ~larger:
            return False
        return cf.choose(smaller).bit_count() > cf.choose(larger).bit_count()
    raise MarketValidationError(f"unknown axiom {report.axiom!r}")
