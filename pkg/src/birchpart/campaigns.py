"""Seeded property campaigns over random configurations.

Each trial is a pure function of (campaign, parameters, trial seed), so the
worker pool only changes wall-clock time, never the reported numbers.
"""
from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .birch import check_pair_lemma, count_birch
from .configs import gen_random, write_configuration
from .errors import InvalidInput
from .tverberg import count_tverberg

CAMPAIGNS = ("parity", "lower-bound", "pair-lemma", "tverberg-parity", "conjecture-search")
DEFAULT_COORD_BOUND = 1000

# candidate partitions per trial; campaigns above this are refused
MAX_CANDIDATES = 10 ** 7


@dataclass
class CampaignResult:
    campaign: str
    parameters: dict
    trials: int
    violations: list = field(default_factory=list)
    max_observed: int = 0
    conjecture_ceiling: Optional[int] = None
    counterexamples: list = field(default_factory=list)
    histogram: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def ceiling_respected(self) -> Optional[bool]:
        if self.conjecture_ceiling is None:
            return None
        return self.max_observed <= self.conjecture_ceiling

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        doc["passed"] = self.passed
        doc["ceiling_respected"] = self.ceiling_respected
        return doc


def trial_seeds(seed: int, trials: int) -> list:
    master = random.Random(seed)
    return [master.getrandbits(63) for _ in range(trials)]


def estimated_candidates(name: str, d: int, kq: int) -> int:
    """Upper estimate of partitions examined per trial."""
    if name == "pair-lemma":
        return d + 2
    if name == "tverberg-parity":
        n = (d + 1) * (kq - 1) + 1
        # Stirling number of the second kind S(n, q) bounds every restricted family
        return sum((-1) ** (kq - j) * math.comb(kq, j) * j ** n for j in range(kq + 1)) // math.factorial(kq)
    n = kq * (d + 1)
    return math.factorial(n) // (math.factorial(d + 1) ** kq * math.factorial(kq))


def run_trial(name: str, d: int, kq: int, seed: int, coord_bound: int) -> dict:
    """Run one trial; returns observed value, expectation, and a violation flag."""
    if name == "pair-lemma":
        X = gen_random(d, d + 2, seed, coord_bound, wrt_origin=True)
        observed = check_pair_lemma(X.points, check=False)
        bad = observed not in (0, 2)
        expected = "0 or 2"
    elif name == "tverberg-parity":
        n = (d + 1) * (kq - 1) + 1
        X = gen_random(d, n, seed, coord_bound, wrt_origin=False)
        observed = count_tverberg(X, kq).total
        floor = math.factorial(max(kq - d, 0))
        problems = []
        if observed < 1:
            problems.append("no Tverberg partition")
        if kq > d + 1 and observed % 2:
            problems.append("odd")
        if observed < floor:
            problems.append(f"below (q-d)!={floor}")
        bad = bool(problems)
        expected = "even, >= %d" % floor if kq > d + 1 else ">= %d" % floor
        if problems:
            expected += " (" + ", ".join(problems) + ")"
    else:
        X = gen_random(d, kq * (d + 1), seed, coord_bound, wrt_origin=True)
        observed = count_birch(X, check=False).count
        if name == "parity":
            bad = kq >= 2 and observed % 2 == 1
            expected = "even"
        elif name == "lower-bound":
            bad = 0 < observed < math.factorial(kq)
            expected = f"0 or >= {math.factorial(kq)}"
        else:
            bad = observed > math.factorial(kq) ** d
            expected = f"<= {math.factorial(kq) ** d}"
    return {
        "seed": seed,
        "observed": observed,
        "expected": expected,
        "violation": bad,
        "configuration": write_configuration(X) if bad else None,
    }


def _run_trial_args(args):
    return run_trial(*args)


def run_campaign(
    name: str,
    d: int,
    kq: int,
    trials: int,
    seed: int = 0,
    workers: int = 1,
    coord_bound: int = DEFAULT_COORD_BOUND,
) -> CampaignResult:
    if name not in CAMPAIGNS:
        raise InvalidInput(f"unknown campaign {name!r}; choose from {', '.join(CAMPAIGNS)}")
    if d < 1 or trials < 0 or workers < 1:
        raise InvalidInput("need d >= 1, trials >= 0 and workers >= 1")
    if name == "tverberg-parity" and kq < 2:
        raise InvalidInput("q must be at least 2")
    if name in ("parity", "lower-bound", "conjecture-search") and kq < 1:
        raise InvalidInput("k must be at least 1")
    if estimated_candidates(name, d, kq) > MAX_CANDIDATES:
        raise InvalidInput(f"d={d}, k/q={kq} exceeds the desk-scale ceiling of {MAX_CANDIDATES} candidates")

    start = time.perf_counter()
    jobs = [(name, d, kq, s, coord_bound) for s in trial_seeds(seed, trials)]
    if workers == 1:
        outcomes = [run_trial(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves trial order whatever the completion order
            outcomes = list(pool.map(_run_trial_args, jobs, chunksize=max(1, trials // (4 * workers))))

    params = {"d": d, ("q" if name == "tverberg-parity" else "k"): kq, "seed": seed,
              "coord_bound": coord_bound}
    result = CampaignResult(campaign=name, parameters=params, trials=trials)
    if name == "conjecture-search":
        result.conjecture_ceiling = math.factorial(kq) ** d
    for index, out in enumerate(outcomes):
        obs = out["observed"]
        result.max_observed = max(result.max_observed, obs)
        result.histogram[obs] = result.histogram.get(obs, 0) + 1
        if not out["violation"]:
            continue
        entry = {
            "trial": index,
            "seed": out["seed"],
            "parameters": params,
            "observed": obs,
            "expected": out["expected"],
            "configuration": out["configuration"],
        }
        if name == "conjecture-search":
            # exceeding a conjecture is a finding, not a failure
            result.counterexamples.append(entry)
        else:
            result.violations.append(entry)
    result.elapsed = time.perf_counter() - start
    return result
