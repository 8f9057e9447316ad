"""Brute-force verification of the degree bound at small n.

Enumerates induced subgraphs of a fixed size (all of them, or a seeded
random sample), computes each one's maximum induced degree with a flat
bit loop, and aggregates: the minimum over subsets of the max degree, a
histogram, and the count of bound violations (which must be zero).

Subsets are bitmasks over the 2^n vertices, enumerated in colexicographic
order by Gosper's next-combination hack; rank intervals shard the scan for
parallel runs, with colex unranking (combinatorial number system) seeking
each shard to its start.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .cube import InducedSubgraph, check_dimension, format_vertex, iter_bits
from .exterior import WeightConfig
from .witness import InvariantViolation, run_pipeline

DEFAULT_BUDGET = 10**8


class BudgetExceededError(ValueError):
    """The exhaustive universe is larger than the configured budget."""


@dataclass(frozen=True)
class Exhaustive:
    """Scan every subset of the given size."""


@dataclass(frozen=True)
class RandomSample:
    """Scan a seeded uniform sample of subsets (with replacement across
    draws, without replacement within each subset)."""

    count: int
    seed: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("sample count must be positive")
        if not isinstance(self.seed, int):
            raise ValueError("random sampling requires an integer seed")


Strategy = Union[Exhaustive, RandomSample]


@dataclass(frozen=True)
class EnumerationPlan:
    n: int
    subset_size: Optional[int] = None
    strategy: Strategy = Exhaustive()
    parallel_shards: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        check_dimension(self.n)
        if self.subset_size is None:
            object.__setattr__(self, "subset_size", (1 << (self.n - 1)) + 1)
        if not 1 <= self.subset_size <= (1 << self.n):
            raise ValueError(f"subset size must be in [1, 2^{self.n}]")
        if self.parallel_shards < 1:
            raise ValueError("shard count must be positive")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if isinstance(self.strategy, Exhaustive) and self.universe_size > self.budget:
            raise BudgetExceededError(
                f"C(2^{self.n}, {self.subset_size}) = {self.universe_size} "
                f"exceeds the budget {self.budget}"
            )

    @property
    def universe_size(self) -> int:
        return math.comb(1 << self.n, self.subset_size)

    @property
    def total_to_scan(self) -> int:
        if isinstance(self.strategy, RandomSample):
            return self.strategy.count
        return self.universe_size

    def degree_bound(self) -> int:
        """ceil(sqrt(n)): the integer degree forced by the theorem."""
        return math.isqrt(self.n - 1) + 1

    def plan_echo(self) -> dict:
        # parallel_shards is an execution detail: reports must be identical
        # across shard-count variations of the same plan
        if isinstance(self.strategy, RandomSample):
            strategy = {
                "kind": "random",
                "count": self.strategy.count,
                "seed": self.strategy.seed,
            }
        else:
            strategy = {"kind": "exhaustive"}
        return {
            "n": self.n,
            "subset_size": self.subset_size,
            "strategy": strategy,
            "budget": self.budget,
        }


def next_combination(mask: int) -> int:
    """Gosper's hack: the next bitmask with the same popcount, ascending."""
    low = mask & -mask
    ripple = mask + low
    return (((ripple ^ mask) >> 2) // low) | ripple


def unrank_combination(rank: int, k: int) -> int:
    """The rank-th (0-based) k-element bitmask in colex order.

    Combinatorial number system: rank = sum C(c_i, i) over the descending
    bit positions c_k > ... > c_1.
    """
    mask = 0
    for i in range(k, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        rank -= math.comb(c, i)
        mask |= 1 << c
    return mask


def rank_combination(mask: int) -> int:
    return sum(math.comb(c, i + 1) for i, c in enumerate(iter_bits(mask)))


def sample_mask(rng: random.Random, universe: int, size: int) -> int:
    """Floyd's sampling: a uniform size-subset of [0, universe) as a bitmask.

    Written out explicitly (rather than random.sample) so the draw depends
    only on randrange, keeping seeded runs stable.
    """
    if not 0 < size <= universe:
        raise ValueError(f"cannot sample {size} of {universe}")
    mask = 0
    for j in range(universe - size, universe):
        t = rng.randrange(j + 1)
        if mask >> t & 1:
            mask |= 1 << j
        else:
            mask |= 1 << t
    return mask


def sample_ranks(rng: random.Random, universe: int, size: int) -> List[int]:
    """Floyd's sampling over a set, for universes too large for bitmasks."""
    if not 0 < size <= universe:
        raise ValueError(f"cannot sample {size} of {universe}")
    chosen: set = set()
    for j in range(universe - size, universe):
        t = rng.randrange(j + 1)
        chosen.add(j if t in chosen else t)
    return sorted(chosen)


def max_induced_degree(members: int, n: int) -> int:
    """Maximum induced degree over the subset bitmask, O(|H| * n) from scratch."""
    best = 0
    remaining = members
    while remaining:
        low = remaining & -remaining
        u = low.bit_length() - 1
        deg = 0
        for b in range(n):
            deg += members >> (u ^ (1 << b)) & 1
        if deg > best:
            best = deg
            if best == n:
                break
        remaining ^= low
    return best


@dataclass
class _ShardResult:
    checked: int = 0
    violations: int = 0
    min_max_degree: Optional[int] = None
    argmin_rank: Optional[int] = None
    argmin_mask: Optional[int] = None
    histogram: Counter = field(default_factory=Counter)

    def record(self, rank: int, mask: int, degree: int, bound: int) -> None:
        self.checked += 1
        self.histogram[degree] += 1
        if degree < bound:
            self.violations += 1
        if self.min_max_degree is None or degree < self.min_max_degree:
            self.min_max_degree = degree
            self.argmin_rank = rank
            self.argmin_mask = mask

    def merge(self, other: "_ShardResult") -> None:
        self.checked += other.checked
        self.violations += other.violations
        self.histogram.update(other.histogram)
        if other.min_max_degree is None:
            return
        # argmin ties across shards break by smallest scan rank
        if (
            self.min_max_degree is None
            or (other.min_max_degree, other.argmin_rank)
            < (self.min_max_degree, self.argmin_rank)
        ):
            self.min_max_degree = other.min_max_degree
            self.argmin_rank = other.argmin_rank
            self.argmin_mask = other.argmin_mask


def _scan_exhaustive_shard(args: Tuple[int, int, int, int, int]) -> _ShardResult:
    n, size, start, stop, bound = args
    result = _ShardResult()
    if start >= stop:
        return result
    mask = unrank_combination(start, size)
    for rank in range(start, stop):
        result.record(rank, mask, max_induced_degree(mask, n), bound)
        if rank + 1 < stop:
            mask = next_combination(mask)
    return result


def _scan_mask_list(args: Tuple[int, int, List[int], int]) -> _ShardResult:
    n, first_rank, masks, bound = args
    result = _ShardResult()
    for offset, mask in enumerate(masks):
        result.record(first_rank + offset, mask, max_induced_degree(mask, n), bound)
    return result


def _run_shards(jobs: list, worker, shards: int) -> _ShardResult:
    total = _ShardResult()
    if shards > 1 and len(jobs) > 1:
        try:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=shards) as pool:
                for result in pool.map(worker, jobs):
                    total.merge(result)
            return total
        except (OSError, PermissionError):  # pools can be unavailable in sandboxes
            pass
    for job in jobs:
        total.merge(worker(job))
    return total


@dataclass(frozen=True)
class ExhaustiveReport:
    plan: EnumerationPlan
    subsets_checked: int
    min_max_degree: int
    argmin_subset: int  # membership bitmask of one subset achieving the min
    histogram: Dict[int, int]
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.min_max_degree >= self.plan.degree_bound()

    def argmin_lines(self) -> List[str]:
        return [format_vertex(u, self.plan.n) for u in iter_bits(self.argmin_subset)]

    def to_json_dict(self) -> dict:
        return {
            "plan": self.plan.plan_echo(),
            "subsets_checked": self.subsets_checked,
            "min_max_degree": self.min_max_degree,
            "argmin_subset": self.argmin_lines(),
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
            "violations": self.violations,
        }


def random_masks(plan: EnumerationPlan) -> List[int]:
    """The full seeded sample for a RandomSample plan, drawn sequentially so
    the list is independent of shard count."""
    if not isinstance(plan.strategy, RandomSample):
        raise ValueError("plan does not use random sampling")
    rng = random.Random(plan.strategy.seed)
    universe = 1 << plan.n
    return [
        sample_mask(rng, universe, plan.subset_size)
        for _ in range(plan.strategy.count)
    ]


def enumerate_and_verify(plan: EnumerationPlan) -> ExhaustiveReport:
    """Scan the plan's subsets and aggregate max-degree statistics.

    Deterministic for a fixed plan regardless of parallel_shards: shard
    boundaries are fixed rank intervals and the merge is ordered.
    """
    bound = plan.degree_bound()
    shards = plan.parallel_shards
    if isinstance(plan.strategy, RandomSample):
        masks = random_masks(plan)
        cuts = [len(masks) * i // shards for i in range(shards + 1)]
        jobs = [
            (plan.n, cuts[i], masks[cuts[i] : cuts[i + 1]], bound)
            for i in range(shards)
            if cuts[i] < cuts[i + 1]
        ]
        total = _run_shards(jobs, _scan_mask_list, shards)
    else:
        universe = plan.universe_size
        cuts = [universe * i // shards for i in range(shards + 1)]
        jobs = [
            (plan.n, plan.subset_size, cuts[i], cuts[i + 1], bound)
            for i in range(shards)
            if cuts[i] < cuts[i + 1]
        ]
        total = _run_shards(jobs, _scan_exhaustive_shard, shards)

    if total.min_max_degree is None:
        raise InvariantViolation("scan produced no subsets")
    return ExhaustiveReport(
        plan=plan,
        subsets_checked=total.checked,
        min_max_degree=total.min_max_degree,
        argmin_subset=total.argmin_mask,
        histogram=dict(total.histogram),
        violations=total.violations,
    )


@dataclass(frozen=True)
class CrossCheckReport:
    checked: int
    consistent: int

    @property
    def ok(self) -> bool:
        return self.checked == self.consistent

    def to_json_dict(self) -> dict:
        return {"checked": self.checked, "consistent": self.consistent}


def cross_check_with_witness(plan: EnumerationPlan, sample: int) -> CrossCheckReport:
    """Tie the spectral pipeline to the combinatorial scan: on sampled
    subsets, the certified witness degree at C=1 must not exceed the true
    max degree, and both must reach sqrt(n).

    Samples ranks without replacement from the plan's subset pool (seeded
    by the plan's strategy, or 0 for exhaustive plans); sample == pool size
    reproduces the full cross product.
    """
    if plan.n > 12:
        raise ValueError("cross-check is limited to n <= 12")
    if isinstance(plan.strategy, RandomSample):
        pool_size = plan.strategy.count
        seed = plan.strategy.seed
        pool = random_masks(plan)
    else:
        pool_size = plan.universe_size
        seed = 0
        pool = None
    if not 1 <= sample <= pool_size:
        raise ValueError(f"sample must be in [1, {pool_size}]")
    chosen = sample_ranks(random.Random(seed), pool_size, sample)

    w = WeightConfig.uniform(plan.n, 1, 1)
    checked = consistent = 0
    for index in chosen:
        members = pool[index] if pool is not None else unrank_combination(
            index, plan.subset_size
        )
        H = InducedSubgraph(plan.n, members)
        report = run_pipeline(w, H)
        witness_degree = report.profile.degree
        _, true_max = H.max_degree()
        checked += 1
        if (
            report.certified
            and witness_degree <= true_max
            and witness_degree**2 >= plan.n
            and true_max**2 >= plan.n
        ):
            consistent += 1
    return CrossCheckReport(checked=checked, consistent=consistent)
