"""Stability checkers and exhaustive stable-set oracles.

Three notions live here:

* ``stable``: the many-to-one notion.  A matching fails through a worker
  matched to an unacceptable firm, a firm that would not choose its own
  assigned set, or a worker-firm pair where the firm would pick the worker
  into its current set and the worker prefers that firm.
* ``copy_stable``: the notion fit for the associated one-to-one market.
  Besides individual rationality on both sides it forbids a copy envying a
  sibling copy's worker, and a copy-worker pair blocks only when the worker
  beats what *every* sibling copy holds, per the blocking copy's order --
  except that a sibling holding that very worker offers no protection, since
  the worker can simply move within the firm.  Plain pairwise blocking is
  deliberately not forbidden: with several
  copies of one firm it fires spuriously, and the exhaustive counterexample
  tests show the classical notion misses almost all matchings that the
  many-to-one market considers stable.
* ``classical_stable``: the textbook one-to-one notion, kept for exactly
  those comparisons.

Checkers return the first violation in a fixed scan order (cases in the
order listed in each docstring; agents by ascending index; pairs
lexicographic), so witnesses are deterministic.  Enumerators scan every
candidate assignment, filter with the matching checker, and return results
sorted by the worker-side assignment tuple.  Pruned enumeration skips
partner pairs that individual rationality (and, for ``copy_stable``, sibling
envy) already rules out; soundness of the pruning is covered by comparing
against unpruned runs in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .association import OneToOneMarket
from .bitsets import bit
from .caps import DEFAULT_CAPS, Caps, require_candidates
from .errors import MarketValidationError
from .markets import ManyToOneMarket
from .matchings import ManyToOneMatching, OneToOneMatching

WORKER_BLOCK = "worker-block"
FIRM_BLOCK = "firm-block"
COPY_ENVY = "copy-envy"
PAIR_BLOCK = "pair-block"


@dataclass(frozen=True)
class StabilityReport:
    """Verdict plus, on failure, the violated case and its first witness."""

    stable: bool
    case: str | None = None
    witness: dict[str, int] | None = None

    def __bool__(self) -> bool:
        return self.stable


def _check_m1_shape(market: ManyToOneMarket, matching: ManyToOneMatching) -> None:
    if len(matching.by_worker) != len(market.workers):
        raise MarketValidationError("matching covers a different worker count")
    if matching.firm_count != len(market.firms):
        raise MarketValidationError("matching covers a different firm count")


def check_stable(market: ManyToOneMarket, matching: ManyToOneMatching) -> StabilityReport:
    """Many-to-one stability.

    Scan order: worker blocks by worker index, firm blocks by firm index,
    then worker-firm pairs lexicographically by (worker, firm).
    """
    _check_m1_shape(market, matching)
    ranks = market.firm_rank
    for w, f in enumerate(matching.by_worker):
        if f is not None and f not in ranks[w]:
            return StabilityReport(False, WORKER_BLOCK, {"worker": w})
    masks = matching.firm_masks
    for f, cf in enumerate(market.choice_functions):
        if cf.choose(masks[f]) != masks[f]:
            return StabilityReport(False, FIRM_BLOCK, {"firm": f})
    for w in range(len(market.workers)):
        current = matching.by_worker[w]
        rank = ranks[w]
        current_rank = len(market.worker_prefs[w]) if current is None else rank[current]
        for f in range(len(market.firms)):
            if f == current:
                continue
            f_rank = rank.get(f)
            if f_rank is None or f_rank >= current_rank:
                continue
            if market.choice_functions[f].choose(masks[f] | bit(w)) >> w & 1:
                return StabilityReport(False, PAIR_BLOCK, {"worker": w, "firm": f})
    return StabilityReport(True)


def enumerate_stable(
    market: ManyToOneMarket, caps: Caps = DEFAULT_CAPS
) -> list[ManyToOneMatching]:
    """Every stable matching, by scanning all worker-to-firm assignments."""
    k = len(market.workers)
    n = len(market.firms)
    require_candidates((n + 1) ** k, caps)
    options: tuple[int | None, ...] = (None, *range(n))
    found = []
    for combo in product(options, repeat=k):
        candidate = ManyToOneMatching(combo, n)
        if check_stable(market, candidate).stable:
            found.append(candidate)
    found.sort(key=lambda m: m.key)
    return found


def _check_11_shape(assoc: OneToOneMarket, matching: OneToOneMatching) -> None:
    if len(matching.by_worker) != len(assoc.source.workers):
        raise MarketValidationError("matching covers a different worker count")
    if matching.copy_count != len(assoc.copies):
        raise MarketValidationError("matching covers a different copy count")


def check_copy_stable(
    assoc: OneToOneMarket, matching: OneToOneMatching
) -> StabilityReport:
    """Stability adapted to firm copies.

    Cases, in scan order:

    1. worker-block: a worker matched to a copy missing from its lifted list;
    2. firm-block: a copy matched to a worker its order does not rank;
    3. copy-envy: a matched copy whose order strictly prefers a sibling
       copy's worker to its own;
    4. pair-block: a copy-worker pair where the worker prefers the copy to
       its current situation and the copy's order ranks the worker strictly
       above what every sibling copy (itself included) currently holds,
       the empty seat counting for unmatched siblings.  A sibling holding
       that very worker does not shield the match: the worker walking over
       to a copy it likes better is still a block, so a worker parked on a
       high-numbered copy while a lower-numbered seat sits empty fails here.
    """
    _check_11_shape(assoc, matching)
    wrank = assoc.worker_rank
    wempty = assoc.worker_empty_rank
    crank = assoc.copy_rank
    cempty = assoc.copy_empty_rank
    by_worker = matching.by_worker
    by_copy = matching.by_copy

    for w, c in enumerate(by_worker):
        if c is not None and wrank[w][c] > wempty[w]:
            return StabilityReport(False, WORKER_BLOCK, {"worker": w})
    for c, w in enumerate(by_copy):
        if w is not None and crank[c][w] > cempty[c]:
            return StabilityReport(False, FIRM_BLOCK, {"copy": c})
    groups = assoc.copies_by_firm
    firm_of = assoc.firm_of_copy
    for c, w in enumerate(by_copy):
        if w is None or crank[c][w] > cempty[c]:
            continue
        row = crank[c]
        own = row[w]
        for sibling in groups[firm_of[c]]:
            if sibling == c:
                continue
            held = by_copy[sibling]
            if held is not None and row[held] < own:
                return StabilityReport(
                    False, COPY_ENVY, {"copy": c, "envied_copy": sibling}
                )
    for c in range(len(assoc.copies)):
        row = crank[c]
        empty = cempty[c]
        group = groups[firm_of[c]]
        for w in range(len(by_worker)):
            rank_here = row[w]
            if rank_here >= empty:
                continue
            current = by_worker[w]
            current_rank = wempty[w] if current is None else wrank[w][current]
            if wrank[w][c] >= current_rank:
                continue
            blocked = True
            for sibling in group:
                held = by_copy[sibling]
                if held is None or held == w:
                    continue
                if row[held] < rank_here:
                    blocked = False
                    break
            if blocked:
                return StabilityReport(False, PAIR_BLOCK, {"copy": c, "worker": w})
    return StabilityReport(True)


def check_classical_stable(
    assoc: OneToOneMarket, matching: OneToOneMatching
) -> StabilityReport:
    """Textbook one-to-one stability on the associated market.

    Scan order: worker rationality, copy rationality, then copy-worker
    pairs lexicographically by (copy, worker).
    """
    _check_11_shape(assoc, matching)
    wrank = assoc.worker_rank
    wempty = assoc.worker_empty_rank
    crank = assoc.copy_rank
    cempty = assoc.copy_empty_rank
    by_worker = matching.by_worker
    by_copy = matching.by_copy

    for w, c in enumerate(by_worker):
        if c is not None and wrank[w][c] > wempty[w]:
            return StabilityReport(False, WORKER_BLOCK, {"worker": w})
    for c, w in enumerate(by_copy):
        if w is not None and crank[c][w] > cempty[c]:
            return StabilityReport(False, FIRM_BLOCK, {"copy": c})
    for c in range(len(assoc.copies)):
        row = crank[c]
        held = by_copy[c]
        held_rank = cempty[c] if held is None else row[held]
        for w in range(len(by_worker)):
            if row[w] >= held_rank:
                continue
            current = by_worker[w]
            current_rank = wempty[w] if current is None else wrank[w][current]
            if wrank[w][c] < current_rank:
                return StabilityReport(False, PAIR_BLOCK, {"copy": c, "worker": w})
    return StabilityReport(True)


def _enumerate_one_to_one(
    assoc: OneToOneMarket,
    caps: Caps,
    pruned: bool,
    envy_prune: bool,
    accept,
) -> list[OneToOneMatching]:
    k = len(assoc.source.workers)
    n_copies = len(assoc.copies)
    crank = assoc.copy_rank
    cempty = assoc.copy_empty_rank
    if pruned:
        options = [
            tuple(c for c in assoc.worker_prefs[w] if crank[c][w] < cempty[c])
            for w in range(k)
        ]
    else:
        options = [tuple(range(n_copies))] * k
    bound = 1
    for opts in options:
        bound *= 1 + len(opts)
    require_candidates(bound, caps)

    firm_of = assoc.firm_of_copy
    found = []
    assignment: list[int | None] = [None] * k
    firm_assigned: list[list[tuple[int, int]]] = [[] for _ in assoc.source.firms]

    def place(w: int, used: int) -> None:
        if w == k:
            candidate = OneToOneMatching(tuple(assignment), n_copies)
            if accept(candidate):
                found.append(candidate)
            return
        assignment[w] = None
        place(w + 1, used)
        for c in options[w]:
            if used >> c & 1:
                continue
            group = firm_assigned[firm_of[c]]
            if envy_prune:
                row = crank[c]
                mine = row[w]
                if any(
                    row[other_w] < mine or crank[other_c][w] < crank[other_c][other_w]
                    for other_c, other_w in group
                ):
                    continue
            assignment[w] = c
            group.append((c, w))
            place(w + 1, used | 1 << c)
            group.pop()
            assignment[w] = None

    place(0, 0)
    found.sort(key=lambda m: m.key)
    return found


def enumerate_copy_stable(
    assoc: OneToOneMarket, caps: Caps = DEFAULT_CAPS, pruned: bool = True
) -> list[OneToOneMatching]:
    """Every copy-stable matching of the associated market."""
    return _enumerate_one_to_one(
        assoc,
        caps,
        pruned,
        envy_prune=pruned,
        accept=lambda m: check_copy_stable(assoc, m).stable,
    )


def enumerate_classical_stable(
    assoc: OneToOneMarket, caps: Caps = DEFAULT_CAPS, pruned: bool = True
) -> list[OneToOneMatching]:
    """Every classically stable matching of the associated market."""
    return _enumerate_one_to_one(
        assoc,
        caps,
        pruned,
        envy_prune=False,
        accept=lambda m: check_classical_stable(assoc, m).stable,
    )
