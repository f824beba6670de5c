"""Market files and JSON rendering of reports.

The on-disk format is JSON, structurally validated against the schema
shipped in ``data/market.schema.json`` and then semantically validated
while building the market.  Subsets are written as lists of worker labels
in worker order; orders as lists of labels best first; tables as
``[menu, chosen]`` pairs covering every menu exactly once, in ascending
menu order.  An optional ``copy_indexing`` section pins the copy numbering
of a firm's decomposition; it must list exactly the orders the
decomposition produces, and is rejected otherwise.

Parsing and serializing are inverse: ``parse_market(serialize_market(doc))``
reproduces the document field for field, including each choice function's
representation kind.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .bitsets import labels_of, mask_of
from .caps import DEFAULT_CAPS, Caps
from .choices import (
    ORDERS,
    SUBSET_RANKING,
    TABLE,
    AxiomReport,
    ChoiceFunction,
    LinearOrder,
)
from .decomposition import decompose
from .errors import MarketValidationError
from .markets import ManyToOneMarket
from .stability import StabilityReport

_MASK_KEYS = frozenset(
    ["menu", "submenu", "first", "second", "smaller", "larger", "expected", "actual"]
)


def market_schema() -> dict:
    with resources.files("matchdecomp.data").joinpath("market.schema.json").open() as fh:
        return json.load(fh)


@dataclass(frozen=True)
class MarketDocument:
    """A parsed market file: the market plus any explicit copy indexing."""

    market: ManyToOneMarket
    copy_indexing: dict[int, tuple[LinearOrder, ...]] = field(default_factory=dict)


def _order_from_labels(labels, index: dict[str, int], context: str) -> LinearOrder:
    ranking = []
    for label in labels:
        if label not in index:
            raise MarketValidationError(f"unknown worker {label!r} in {context}")
        ranking.append(index[label])
    return LinearOrder(tuple(ranking))


def _mask_from_labels(labels, index: dict[str, int], context: str) -> int:
    out = []
    for label in labels:
        if label not in index:
            raise MarketValidationError(f"unknown worker {label!r} in {context}")
        out.append(index[label])
    if len(set(out)) != len(out):
        raise MarketValidationError(f"repeated worker in {context}")
    return mask_of(out)


def _parse_choice(spec: dict, widx: dict[str, int], firm: str) -> ChoiceFunction:
    kind = spec["kind"]
    payload = spec["payload"]
    k = len(widx)
    if kind == SUBSET_RANKING:
        masks = [
            _mask_from_labels(entry, widx, f"subset ranking of {firm}")
            for entry in payload
        ]
        return ChoiceFunction.from_subset_ranking(masks, k)
    if kind == ORDERS:
        orders = [
            _order_from_labels(entry, widx, f"orders of {firm}") for entry in payload
        ]
        return ChoiceFunction.from_orders(orders, k)
    entries: dict[int, int] = {}
    for pair in payload:
        menu = _mask_from_labels(pair[0], widx, f"table menu of {firm}")
        chosen = _mask_from_labels(pair[1], widx, f"table value of {firm}")
        if menu in entries:
            raise MarketValidationError(f"table of {firm} lists a menu twice")
        entries[menu] = chosen
    if len(entries) != 1 << k:
        raise MarketValidationError(
            f"table of {firm} covers {len(entries)} of {1 << k} menus"
        )
    return ChoiceFunction.from_table(
        tuple(entries[m] for m in range(1 << k)), k
    )


def parse_market(data: dict, caps: Caps = DEFAULT_CAPS) -> MarketDocument:
    """Validate a deserialized market file and build the market."""
    try:
        jsonschema.validate(data, market_schema())
    except jsonschema.ValidationError as exc:
        raise MarketValidationError(f"market file rejected by schema: {exc.message}")

    workers = tuple(data["workers"])
    widx = {label: i for i, label in enumerate(workers)}
    firm_labels = []
    cfs = []
    for entry in data["firms"]:
        firm_labels.append(entry["id"])
        cfs.append(_parse_choice(entry["choice"], widx, entry["id"]))
    if len(set(firm_labels)) != len(firm_labels):
        raise MarketValidationError("duplicate firm ids")
    fidx = {label: i for i, label in enumerate(firm_labels)}

    prefs_in = data["worker_prefs"]
    unknown = set(prefs_in) - set(workers)
    if unknown:
        raise MarketValidationError(f"worker_prefs for unknown workers {sorted(unknown)}")
    missing = set(workers) - set(prefs_in)
    if missing:
        raise MarketValidationError(f"worker_prefs missing for {sorted(missing)}")
    worker_prefs = []
    for label in workers:
        prefs = []
        for firm in prefs_in[label]:
            if firm not in fidx:
                raise MarketValidationError(
                    f"unknown firm {firm!r} in preferences of {label}"
                )
            prefs.append(fidx[firm])
        worker_prefs.append(tuple(prefs))

    market = ManyToOneMarket(workers, tuple(firm_labels), tuple(cfs), tuple(worker_prefs))

    copy_indexing: dict[int, tuple[LinearOrder, ...]] = {}
    for firm, orders_in in data.get("copy_indexing", {}).items():
        if firm not in fidx:
            raise MarketValidationError(f"copy_indexing for unknown firm {firm!r}")
        f = fidx[firm]
        explicit = tuple(
            _order_from_labels(entry, widx, f"copy_indexing of {firm}")
            for entry in orders_in
        )
        # decompose validates that the explicit family is exactly the
        # decomposition's order set (and that the firm is path independent)
        decompose(market.choice_functions[f], explicit, caps)
        copy_indexing[f] = explicit
    return MarketDocument(market, copy_indexing)


def load_market(path: str, caps: Caps = DEFAULT_CAPS) -> MarketDocument:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise MarketValidationError("market file must hold a JSON object")
    return parse_market(data, caps)


def serialize_market(
    market: ManyToOneMarket,
    copy_indexing: dict[int, tuple[LinearOrder, ...]] | None = None,
) -> dict:
    """Inverse of :func:`parse_market`, preserving representation kinds."""
    workers = market.workers
    firms = []
    for label, cf in zip(market.firms, market.choice_functions):
        if cf.kind == TABLE:
            payload = [
                [labels_of(menu, workers), labels_of(chosen, workers)]
                for menu, chosen in enumerate(cf.table)
            ]
        elif cf.kind == SUBSET_RANKING:
            payload = [labels_of(mask, workers) for mask in cf.ranking]
        else:
            payload = [[workers[w] for w in o.ranking] for o in cf.orders]
        firms.append({"id": label, "choice": {"kind": cf.kind, "payload": payload}})
    data = {
        "workers": list(workers),
        "firms": firms,
        "worker_prefs": {
            label: [market.firms[f] for f in prefs]
            for label, prefs in zip(workers, market.worker_prefs)
        },
    }
    if copy_indexing:
        data["copy_indexing"] = {
            market.firms[f]: [[workers[w] for w in o.ranking] for o in orders]
            for f, orders in sorted(copy_indexing.items())
        }
    return data


def dump_market(doc: MarketDocument) -> str:
    data = serialize_market(doc.market, doc.copy_indexing)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def render_axiom_report(report: AxiomReport, workers: tuple[str, ...]) -> dict:
    out: dict = {"axiom": report.axiom, "passed": report.passed}
    if report.witness is not None:
        out["witness"] = {
            key: labels_of(value, workers) if key in _MASK_KEYS else workers[value]
            for key, value in report.witness.items()
        }
    return out


def render_stability_report(
    report: StabilityReport,
    workers: tuple[str, ...],
    firms: tuple[str, ...] = (),
    copy_labels: tuple[str, ...] = (),
) -> dict:
    out: dict = {"stable": report.stable}
    if report.case is not None:
        out["case"] = report.case
    if report.witness is not None:
        rendered = {}
        for key, value in report.witness.items():
            if key == "worker":
                rendered[key] = workers[value]
            elif key == "firm":
                rendered[key] = firms[value]
            else:  # "copy" and "envied_copy"
                rendered[key] = copy_labels[value]
        out["witness"] = rendered
    return out
