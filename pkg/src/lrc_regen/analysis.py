"""Brute-force oracles: minimum distance, locality, bounds, construction checks."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from .lrc import CASE_I, ConstructionPlan, LinearCode, code_from_dict
from .matrix import Matrix, columns_rank

DEFAULT_BUDGET = 10**7
EXHAUSTIVE_LOCALITY_MAX_N = 12


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


def enumeration_budget() -> int:
    """Budget for subset/codeword enumeration; ``LRC_REGEN_BUDGET`` overrides it."""
    raw = os.environ.get("LRC_REGEN_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _min_distance_rank(G: Matrix, budget: int) -> int:
    # D = N - max{|X| : rank(G_X) < K}: smallest erasure set that drops the rank
    K, N = G.shape
    cols = G.columns()
    spent = 0
    for erased in range(1, N - K + 2):
        spent += math.comb(N, erased)
        if spent > budget:
            raise BudgetExceededError(f"rank-based distance needs more than {budget} subsets")
        for gone in combinations(range(N), erased):
            keep = [cols[j] for j in range(N) if j not in gone]
            if columns_rank(keep, G.p) < K:
                return erased
    # unreachable for a full-rank generator (Singleton bound)
    raise AssertionError("generator is not of full row rank")


def _min_distance_enum(G: Matrix, budget: int) -> int:
    K, N = G.shape
    p = G.p
    total = p**K
    if total > budget:
        raise BudgetExceededError(f"codeword enumeration needs {total} > {budget} messages")
    gen = np.array(G.rows, dtype=np.int64)
    best = N
    chunk = 1 << 16
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        word = np.zeros((idx.size, N), dtype=np.int64)
        for row in range(K):
            digit = (idx // p**row) % p
            word = (word + digit[:, None] * gen[row]) % p
        best = min(best, int(np.count_nonzero(word, axis=1).min()))
    return best


def min_distance_of_generator(G: Matrix, method: str = "auto", budget: Optional[int] = None) -> int:
    budget = enumeration_budget() if budget is None else budget
    if method == "auto":
        method = "codeword_enum" if G.p**G.nrows <= budget else "rank_based"
    if method == "rank_based":
        return _min_distance_rank(G, budget)
    if method == "codeword_enum":
        return _min_distance_enum(G, budget)
    raise ValueError(f"unknown method {method!r}")


def min_distance(code: LinearCode, method: str = "auto", budget: Optional[int] = None) -> int:
    """Minimum Hamming distance of ``code``.

    ``rank_based`` searches for the smallest set of erased coordinates that
    leaves the remaining columns rank deficient; ``codeword_enum`` takes the
    minimum weight over all ``q**K - 1`` nonzero codewords. ``auto`` prefers
    enumeration when ``q**K`` fits the budget.
    """
    return min_distance_of_generator(code.generator, method, budget)


def singleton_bound(N: int, K: int, R: int, Delta: int) -> int:
    """Upper bound ``N - K - (ceil(K/R) - 1)(Delta - 1) + 1`` on the distance of an LRC."""
    if K < 1 or R < 1:
        raise ValueError("need K >= 1 and R >= 1")
    return N - K - (-(-K // R) - 1) * (Delta - 1) + 1


@dataclass
class LocalityReport:
    ok: bool
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    failure: Optional[dict] = None

    def __bool__(self):
        return self.ok


def _witness_failure(code: LinearCode, S: tuple[int, ...], Delta: int) -> Optional[dict]:
    """First ``(x, T)`` where ``x`` is not recoverable from ``T``, or ``None``."""
    helpers = len(S) - Delta + 1
    if helpers < 0:
        return {"set": list(S), "reason": f"|S| - Delta + 1 = {helpers} < 0"}
    for x in S:
        rest = [y for y in S if y != x]
        for T in combinations(rest, helpers):
            r = code.columns_rank(T) if T else 0
            if code.columns_rank(T + (x,)) != r:
                return {"set": list(S), "lost": x, "helpers": list(T)}
    return None


def _candidate_witnesses(code: LinearCode, j: int, width: int, exhaustive: bool) -> Iterator[tuple[int, ...]]:
    group = code.group_of(j)
    if len(group) <= width:
        yield group
    else:
        others = [y for y in group if y != j]
        for rest in combinations(others, width - 1):
            yield tuple(sorted(rest + (j,)))
    if exhaustive:
        others = [y for y in range(1, code.n + 1) if y != j]
        for size in range(1, width + 1):
            for rest in combinations(others, size - 1):
                yield tuple(sorted(rest + (j,)))


def verify_locality(
    code: LinearCode,
    R: Optional[int] = None,
    Delta: Optional[int] = None,
    exhaustive: bool = False,
) -> LocalityReport:
    """Check ``(R, Delta)`` all-symbol locality.

    Symbol ``j`` needs a set ``S`` containing it with ``|S| <= R + Delta - 1``
    such that every member of ``S`` lies in the span of any ``|S| - Delta + 1``
    other members. Candidates come from the declared group of ``j`` first;
    ``exhaustive`` adds every small subset of ``1..N`` (only for ``N <= 12``).
    """
    R = code.params.R if R is None else R
    Delta = code.params.Delta if Delta is None else Delta
    if exhaustive and code.n > EXHAUSTIVE_LOCALITY_MAX_N:
        raise BudgetExceededError(f"exhaustive witness search limited to N <= {EXHAUSTIVE_LOCALITY_MAX_N}")
    width = R + Delta - 1
    cache: dict[tuple[int, ...], Optional[dict]] = {}
    report = LocalityReport(ok=True)
    for j in range(1, code.n + 1):
        last_failure = None
        for S in _candidate_witnesses(code, j, width, exhaustive):
            if S not in cache:
                cache[S] = _witness_failure(code, S, Delta)
            if cache[S] is None:
                report.witnesses[j] = S
                break
            last_failure = cache[S]
        else:
            report.ok = False
            report.failure = {"symbol": j, **(last_failure or {"reason": "no candidate witness set"})}
            return report
    return report


@dataclass
class ConstructionReport:
    ok: bool
    failure: Optional[str] = None

    def __bool__(self):
        return self.ok


def _admissible_counts(caps: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    ranges = [range(c + 1) for c in caps]
    for counts in product(*ranges):
        if sum(counts) == total:
            yield counts


def verify_construction(
    code: LinearCode, plan: ConstructionPlan, budget: Optional[int] = None
) -> ConstructionReport:
    """Check the rank conditions a construction promises.

    (a) each group's columns span a space of its declared rank and every
    that-many columns of the group are independent (the group code is MDS);
    (b) every column set of size ``min(K, sum of ranks)`` taking at most the
    declared rank from each group is independent (smaller admissible sets are
    subsets of these); (c) on a deterministic sample, sets exceeding a group's
    cap are dependent.
    """
    budget = enumeration_budget() if budget is None else budget
    groups = [tuple(g) for g in plan.groups()]
    if list(code.partition) != groups:
        return ConstructionReport(False, f"partition {code.partition} != plan groups {groups}")
    if len(plan.group_ranks) != len(groups):
        return ConstructionReport(False, "plan declares a different number of groups")

    for g, r in zip(groups, plan.group_ranks):
        actual = code.columns_rank(g)
        if actual != r:
            return ConstructionReport(False, f"group {list(g)} has rank {actual}, declared {r}")
        for sub in combinations(g, r):
            if code.columns_rank(sub) != r:
                return ConstructionReport(False, f"group {list(g)} not MDS: columns {list(sub)} dependent")

    caps = [min(r, len(g)) for g, r in zip(groups, plan.group_ranks)]
    size = min(code.k, sum(caps))
    cost = sum(
        math.prod(math.comb(len(g), c) for g, c in zip(groups, counts))
        for counts in _admissible_counts(caps, size)
    )
    if cost > budget:
        raise BudgetExceededError(f"construction check needs {cost} > {budget} rank evaluations")
    for counts in _admissible_counts(caps, size):
        picks = [combinations(g, c) for g, c in zip(groups, counts)]
        for choice in product(*picks):
            X = tuple(j for part in choice for j in part)
            if code.columns_rank(X) != size:
                return ConstructionReport(False, f"admissible columns {list(X)} are dependent")

    for g, r in zip(groups, plan.group_ranks):
        if len(g) > r:
            X = g[: r + 1]
            if code.columns_rank(X) > r:
                return ConstructionReport(False, f"columns {list(X)} exceed group rank {r}")
    return ConstructionReport(True)


def is_prop_optimal(plan: ConstructionPlan) -> bool:
    """Whether a case (i) plan's dimension is provably the largest possible.

    Case (ii) dimensions are only lower bounds, so they report ``False``.
    """
    if plan.case_tag != CASE_I:
        return False
    return -(-plan.K // plan.R) * plan.R - plan.K >= plan.gap_s


def load_code(path: str | Path) -> LinearCode:
    """Read a code artifact, computing its distance if the file omits it."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("distance") is None:
        G = Matrix(data["matrix"], int(data["q"]))
        return code_from_dict(data, distance=min_distance_of_generator(G))
    return code_from_dict(data)
