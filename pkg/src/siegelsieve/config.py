"""Run configuration: seeds, factoring effort, witness search bounds."""

from __future__ import annotations

import random
from dataclasses import dataclass

# d-coefficient normalizations (see spinor.derived_coeffs)
DP_FACTORIZATION = "factorization"
DP_PRINTED = "printed"


@dataclass(frozen=True)
class Config:
    """All knobs that influence results; identical configs give identical output.

    Every randomized routine derives its generator from `seed` plus a stable
    context string, so results do not depend on call order.
    """

    seed: int = 0
    factor_trial_bound: int = 10**6
    rho_iteration_cap: int = 5_000_000
    witness_bound: int = 10_000
    dp_variant: str = DP_FACTORIZATION
    axiom_quartic_cap: int = 16

    def __post_init__(self):
        if self.dp_variant not in (DP_FACTORIZATION, DP_PRINTED):
            raise ValueError(f"unknown d-coefficient variant {self.dp_variant!r}")

    def rng(self, *context) -> random.Random:
        """Deterministic generator for a given context (e.g. a prime, a polynomial)."""
        key = f"{self.seed}|" + "|".join(str(c) for c in context)
        return random.Random(key)


DEFAULT_CONFIG = Config()
