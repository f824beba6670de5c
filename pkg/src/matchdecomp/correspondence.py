"""Moving matchings between the two market forms, and what that preserves.

``merge_matching`` collapses a one-to-one matching of the copies into a
many-to-one matching: each firm hires the union of what its copies hold.
``split_matching`` goes the other way: every worker a firm hires is handed
to the lowest-numbered copy whose order ranks that worker highest within
the hired set; remaining copies stay empty.  Splitting only works when
each firm would actually choose its hired set, otherwise some hired worker
is nobody's maximum and a FirmRationalityError is raised.

``verify_correspondence`` checks, by exhaustive enumeration, that the two
translations are mutually inverse bijections between the copy-stable
matchings of the associated market and the stable matchings of the source
market.

``check_count_invariance`` is the rural-hospitals style diagnostic: when
every firm satisfies the law of aggregate demand, each firm fills the same
number of copies in every copy-stable matching, hires the same number of
workers in every stable matching, and each worker is either matched in all
stable matchings or in none.  Firms failing the premise make the report
informational rather than a failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .association import OneToOneMarket
from .bitsets import iter_indices
from .caps import DEFAULT_CAPS, Caps
from .choices import check_lad
from .errors import FirmRationalityError, MarketValidationError
from .markets import ManyToOneMarket
from .matchings import ManyToOneMatching, OneToOneMatching
from .stability import enumerate_copy_stable, enumerate_stable


def merge_matching(
    assoc: OneToOneMarket, matching: OneToOneMatching
) -> ManyToOneMatching:
    """Union each firm's copy assignments into one many-to-one matching."""
    if matching.copy_count != len(assoc.copies):
        raise MarketValidationError("matching covers a different copy count")
    firm_of = assoc.firm_of_copy
    by_worker = tuple(
        None if c is None else firm_of[c] for c in matching.by_worker
    )
    return ManyToOneMatching(by_worker, len(assoc.source.firms))


def split_matching(
    assoc: OneToOneMarket, matching: ManyToOneMatching
) -> OneToOneMatching:
    """Distribute each firm's hired set over its copies.

    Worker ``w`` goes to the lowest-numbered copy whose order picks ``w``
    as its best worker within the firm's hired set.
    """
    source = assoc.source
    if matching.firm_count != len(source.firms):
        raise MarketValidationError("matching covers a different firm count")
    if len(matching.by_worker) != len(source.workers):
        raise MarketValidationError("matching covers a different worker count")
    by_worker: list[int | None] = [None] * len(source.workers)
    for f, hired in enumerate(matching.firm_masks):
        if hired == 0:
            continue
        taken: dict[int, int] = {}
        for c in assoc.copies_by_firm[f]:
            best = assoc.copies[c].order.best_in(hired)
            if best is not None and best not in taken:
                taken[best] = c
        for w in iter_indices(hired):
            if w not in taken:
                raise FirmRationalityError(
                    f"firm {source.firms[f]} would not choose its assigned set: "
                    f"no copy's best pick is {source.workers[w]}"
                )
            by_worker[w] = taken[w]
    return OneToOneMatching(tuple(by_worker), len(assoc.copies))


@dataclass(frozen=True)
class CorrespondenceReport:
    """Both stable sets plus the two translation images, with a verdict."""

    passed: bool
    stable: tuple[ManyToOneMatching, ...]
    copy_stable: tuple[OneToOneMatching, ...]
    merged: tuple[ManyToOneMatching, ...]  # merge image of copy_stable, aligned
    split: tuple[OneToOneMatching, ...]  # split image of stable, aligned
    problems: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.passed


def verify_correspondence(
    assoc: OneToOneMarket,
    caps: Caps = DEFAULT_CAPS,
    stable: list[ManyToOneMatching] | None = None,
    copy_stable: list[OneToOneMatching] | None = None,
) -> CorrespondenceReport:
    """Exhaustively confirm the stable sets are in merge/split bijection.

    Precomputed stable sets may be passed in to avoid re-enumeration; they
    must come from the same market pair.
    """
    if stable is None:
        stable = enumerate_stable(assoc.source, caps)
    if copy_stable is None:
        copy_stable = enumerate_copy_stable(assoc, caps)
    problems: list[str] = []
    stable_set = set(stable)
    copy_stable_set = set(copy_stable)

    merged = []
    for lam in copy_stable:
        image = merge_matching(assoc, lam)
        merged.append(image)
        if image not in stable_set:
            problems.append(f"merge image {image.by_worker} is not stable")
        elif split_matching(assoc, image) != lam:
            problems.append(f"split(merge) moved {lam.by_worker}")
    split = []
    for mu in stable:
        try:
            image = split_matching(assoc, mu)
        except FirmRationalityError as exc:
            problems.append(f"split failed on stable matching {mu.by_worker}: {exc}")
            continue
        split.append(image)
        if image not in copy_stable_set:
            problems.append(f"split image {image.by_worker} is not copy-stable")
        elif merge_matching(assoc, image) != mu:
            problems.append(f"merge(split) moved {mu.by_worker}")
    if len(stable) != len(copy_stable):
        problems.append(
            f"{len(stable)} stable vs {len(copy_stable)} copy-stable matchings"
        )
    if len(set(merged)) != len(merged):
        problems.append("merge is not injective on the copy-stable set")
    return CorrespondenceReport(
        not problems,
        tuple(stable),
        tuple(copy_stable),
        tuple(merged),
        tuple(split),
        tuple(problems),
    )


PASS = "pass"
FAIL = "fail"
PREMISE_UNMET = "premise-unmet"


@dataclass(frozen=True)
class CountInvarianceReport:
    """Fill counts across the stable sets, gated on aggregate demand law.

    ``copy_counts[m][f]``: copies of firm ``f`` filled in the m-th
    copy-stable matching.  ``firm_sizes[m][f]``: workers firm ``f`` hires in
    the m-th stable matching.  ``worker_matched[m][w]``: whether worker
    ``w`` is matched there.  ``verdict`` is ``premise-unmet`` when some firm
    fails the law of aggregate demand, in which case the counts are
    reported but not judged.
    """

    lad_by_firm: tuple[bool, ...]
    verdict: str
    copy_counts: tuple[tuple[int, ...], ...]
    firm_sizes: tuple[tuple[int, ...], ...]
    worker_matched: tuple[tuple[bool, ...], ...]

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def __bool__(self) -> bool:
        return self.passed


def check_count_invariance(
    assoc: OneToOneMarket,
    caps: Caps = DEFAULT_CAPS,
    stable: list[ManyToOneMatching] | None = None,
    copy_stable: list[OneToOneMatching] | None = None,
) -> CountInvarianceReport:
    source = assoc.source
    if stable is None:
        stable = enumerate_stable(source, caps)
    if copy_stable is None:
        copy_stable = enumerate_copy_stable(assoc, caps)
    lad = tuple(check_lad(cf, caps).passed for cf in source.choice_functions)

    firm_of = assoc.firm_of_copy
    n = len(source.firms)
    copy_counts = []
    for lam in copy_stable:
        counts = [0] * n
        for c in lam.by_worker:
            if c is not None:
                counts[firm_of[c]] += 1
        copy_counts.append(tuple(counts))
    firm_sizes = [
        tuple(mask.bit_count() for mask in mu.firm_masks) for mu in stable
    ]
    worker_matched = [
        tuple(f is not None for f in mu.by_worker) for mu in stable
    ]

    if not all(lad):
        verdict = PREMISE_UNMET
    else:
        invariant = (
            len(set(copy_counts)) <= 1
            and len(set(firm_sizes)) <= 1
            and len(set(worker_matched)) <= 1
        )
        verdict = PASS if invariant else FAIL
    return CountInvarianceReport(
        lad, verdict, tuple(copy_counts), tuple(firm_sizes), tuple(worker_matched)
    )
