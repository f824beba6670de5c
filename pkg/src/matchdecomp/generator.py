"""Seeded random market generator.

Firms are built as unions of random linear orders, which makes every
generated choice function path independent by construction; nothing else
would be safe to feed to the decomposition machinery.  The law of
aggregate demand is *not* guaranteed: two orders disagreeing on their top
workers violate it easily, which is exactly what the count-invariance
diagnostics need to see both sides of.

Determinism contract: one ``random.Random(seed)`` instance (CPython's
Mersenne Twister, MT19937) drives all draws in a fixed documented order:
per firm, the order count, then each order's acceptable-worker coin flips
in worker index order followed by one shuffle; then per worker, the
acceptable-firm coin flips in firm index order followed by one shuffle.
Same parameters and seed give byte-identical serialized markets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .choices import ChoiceFunction, LinearOrder
from .errors import MarketValidationError
from .markets import ManyToOneMarket


@dataclass(frozen=True)
class GenParams:
    """Knobs for one random market.

    ``density`` is the probability that any worker-firm pair is mutually
    listed at all; 1.0 means everyone ranks everyone.
    """

    workers: int
    firms: int
    max_orders: int = 3
    density: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.workers < 1 or self.firms < 1 or self.max_orders < 1:
            raise MarketValidationError("workers, firms, max_orders must be >= 1")
        if not 0.0 < self.density <= 1.0:
            raise MarketValidationError("density must be in (0, 1]")


def random_market(params: GenParams) -> ManyToOneMarket:
    rng = random.Random(params.seed)
    k, n = params.workers, params.firms
    workers = tuple(f"w{i + 1}" for i in range(k))
    firms = tuple(f"f{i + 1}" for i in range(n))

    choice_functions = []
    for _ in range(n):
        count = rng.randint(1, params.max_orders)
        orders: list[LinearOrder] = []
        for _ in range(count):
            acceptable = [w for w in range(k) if rng.random() < params.density]
            rng.shuffle(acceptable)
            if not acceptable:
                continue
            order = LinearOrder(tuple(acceptable))
            if order not in orders:  # duplicates add nothing to the union
                orders.append(order)
        choice_functions.append(ChoiceFunction.from_orders(tuple(orders), k))

    worker_prefs = []
    for _ in range(k):
        acceptable = [f for f in range(n) if rng.random() < params.density]
        rng.shuffle(acceptable)
        worker_prefs.append(tuple(acceptable))

    return ManyToOneMarket(workers, firms, tuple(choice_functions), tuple(worker_prefs))
