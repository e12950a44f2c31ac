"""Exploratory searches.  They report what they find and assert nothing."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import natset as ns
from .embed import fe, fe_decide, proper_fe
from .generate import random_embeds_pair
from .natset import NatSet
from .structure import difference_set

DEFAULT_CANDIDATES = ("N", "ap(0,2)", "ap(0,3)", "per(;110)", "qset", "pow2", "squares", "{0,1,3}")


@dataclass(frozen=True)
class DensityCase:
    a: str
    b: str
    fe_status: str
    exact: bool  # the embedding evidence is a proof, not a bounded search
    density_a: Fraction
    density_b: Fraction

    def to_dict(self):
        return {"a": self.a, "b": self.b, "fe": self.fe_status, "exact": self.exact,
                "density_a": str(self.density_a), "density_b": str(self.density_b)}


def density_search(candidates: Mapping[str, NatSet], horizon: int = 1 << 16,
                   n_max: int = 12, k_max: int = 1 << 16) -> list[DensityCase]:
    """Pairs with A ≤fe B (exactly or to the search bounds) where |A ∩ h| / h
    exceeds |B ∩ h| / h at the horizon h."""
    dens = {name: Fraction(sum(1 for _ in s.elements(horizon)), horizon) for name, s in candidates.items()}
    found = []
    for na, a in candidates.items():
        for nb, b in candidates.items():
            if dens[na] <= dens[nb]:
                continue
            v = fe(a, b, n_max, k_max)
            if v.embeds:
                exact = v.certificate.to_dict()["type"] != "prefix_witnesses"
                found.append(DensityCase(na, nb, v.status, exact, dens[na], dens[nb]))
    return found


@dataclass(frozen=True)
class DifferenceCase:
    a: str
    a2: str
    b: str
    b2: str
    proper: tuple  # (A into B proper, A' into B' proper)
    holds: bool

    def to_dict(self):
        return {"A": self.a, "A'": self.a2, "B": self.b, "B'": self.b2,
                "proper": list(self.proper), "holds": self.holds}


def difference_search(count: int, seed: int, max_t: int = 6, max_p: int = 6) -> list[DifferenceCase]:
    """Random pairs A ≤fe B and A' ≤fe B' and whether (A - A') ≤fe (B - B'),
    differences taken as nonnegative values a - a'."""
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        a, b = random_embeds_pair(rng, max_t, max_p)
        a2, b2 = random_embeds_pair(rng, max_t, max_p)
        holds = fe_decide(difference_set(a, a2), difference_set(b, b2)).embeds
        proper = (proper_fe(a, b).proper, proper_fe(a2, b2).proper)
        out.append(DifferenceCase(ns.describe(a), ns.describe(a2), ns.describe(b), ns.describe(b2), proper, holds))
    return out


def summarize_differences(cases: Sequence[DifferenceCase]) -> dict:
    both_proper = [c for c in cases if all(c.proper)]
    return {
        "cases": len(cases),
        "failures": sum(not c.holds for c in cases),
        "both_proper": len(both_proper),
        "failures_with_both_proper": sum(not c.holds for c in both_proper),
        "examples": [c.to_dict() for c in cases if not c.holds][:5],
    }
