"""LRCs run as exact regenerating codes: encode, repair, reconstruct.

A code of length ``N``, distance ``D`` and ``(R, Delta)`` locality acts as an
``(n, k, d) = (N, N - D + 1, N - Delta + 1)`` exact regenerating code storing
one symbol per node. Repair sends whole stored symbols, so the bandwidth of a
repair is the number of helpers actually used.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Optional, Sequence

from .analysis import BudgetExceededError, enumeration_budget
from .lrc import LinearCode, LrcParams
from .matrix import solve_in_span

MAX_SYMMETRIZE_N = 5


class RepairError(RuntimeError):
    """The lost symbol is not in the span of any admissible helper subset."""


@dataclass(frozen=True)
class RegenParams:
    n: int
    k: int
    d: int
    alpha: Fraction
    gamma: Fraction
    B: Fraction
    beta: Optional[Fraction] = None

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "alpha": str(self.alpha),
            "gamma": str(self.gamma),
            "B": str(self.B),
        }
        if self.beta is not None:
            out["beta"] = str(self.beta)
        return out


def as_regen_params(p: LrcParams) -> RegenParams:
    return RegenParams(
        n=p.N,
        k=p.N - p.D + 1,
        d=p.N - p.Delta + 1,
        alpha=Fraction(1),
        gamma=Fraction(p.R),
        B=Fraction(p.K),
    )


@dataclass
class NodeState:
    index: int
    symbols: list[int]
    alive: bool = True


@dataclass
class RepairTranscript:
    lost: int
    helpers: tuple[int, ...]
    transmitted: dict[int, int]
    recovered: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.transmitted.values())

    def to_json(self) -> dict:
        return {
            "lost": self.lost,
            "helpers": list(self.helpers),
            "transmitted": {str(v): c for v, c in sorted(self.transmitted.items())},
            "total": self.total,
        }


def encode(code: LinearCode, message: Sequence[int]) -> list[NodeState]:
    """Node ``i`` stores symbol ``i`` of ``message @ G``."""
    if len(message) != code.k:
        raise ValueError(f"message has length {len(message)}, code dimension is {code.k}")
    if any(not 0 <= x < code.q for x in message):
        raise ValueError(f"message symbols must lie in [0, {code.q})")
    word = code.generator.vecmul(message)
    return [NodeState(i + 1, [x]) for i, x in enumerate(word)]


def reconstruct(code: LinearCode, observed: Mapping[int, int]) -> list[int]:
    """Recover the message from at least ``k = N - D + 1`` node symbols."""
    k = code.n - code.params.D + 1
    if len(observed) < k:
        raise ValueError(f"need at least k={k} nodes, got {len(observed)}")
    nodes = sorted(observed)
    # solve G_X^T m = y
    system = code.columns(nodes).transpose()
    y = [observed[j] % code.q for j in nodes]
    msg = solve_in_span(system, y)
    if msg is None:
        raise ValueError("observed symbols are not a restriction of any codeword")
    if code.columns_rank(nodes) < code.k:
        raise ValueError(f"nodes {nodes} do not determine the message")
    word = code.generator.vecmul(msg)
    if any(word[j - 1] != observed[j] % code.q for j in nodes):
        raise ValueError("observed symbols are inconsistent with the decoded message")
    return msg


def repair_degree(code: LinearCode) -> int:
    return code.n - code.params.Delta + 1


def plan_repair(code: LinearCode, lost: int, helpers: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """Pick the helpers to contact and the combining coefficients.

    Within the lost node's group, the lowest-labelled admissible set of
    ``min(|group|, R + Delta - 1) - Delta + 1`` available members is tried
    first, then the remaining same-size subsets in lexicographic order.
    """
    Delta, R = code.params.Delta, code.params.R
    group = code.group_of(lost)
    need = min(len(group), R + Delta - 1) - Delta + 1
    available = sorted(set(group) & set(helpers) - {lost})
    target = code.column(lost)
    if need <= 0:
        if not any(target):
            return (), []
        raise RepairError(f"node {lost}: group too small to repair with Delta={Delta}")
    for T in combinations(available, need):
        coeffs = solve_in_span(code.columns(T), target)
        if coeffs is not None:
            return T, coeffs
    raise RepairError(f"node {lost} is not recoverable from any {need} of {available}")


def repair(
    code: LinearCode, lost: int, helpers: Sequence[int], states: Sequence[NodeState]
) -> RepairTranscript:
    d = repair_degree(code)
    helpers = tuple(sorted(set(helpers)))
    if not 1 <= lost <= code.n:
        raise ValueError(f"lost node {lost} out of range 1..{code.n}")
    if lost in helpers:
        raise ValueError("the lost node cannot be its own helper")
    if len(helpers) < d:
        raise ValueError(f"need at least d={d} helpers, got {len(helpers)}")
    by_index = {s.index: s for s in states}
    for v in helpers:
        if v not in by_index or not by_index[v].alive:
            raise ValueError(f"helper {v} is not an available node")
    T, coeffs = plan_repair(code, lost, helpers)
    width = len(by_index[helpers[0]].symbols)
    q = code.q
    recovered = [
        sum(c * by_index[v].symbols[pos] for v, c in zip(T, coeffs)) % q for pos in range(width)
    ]
    return RepairTranscript(lost, helpers, {v: width for v in T}, recovered)


def exhaustive_repair_check(code: LinearCode, seed: int = 0, budget: Optional[int] = None) -> bool:
    """Repair every node from every helper set of size exactly ``d``."""
    budget = enumeration_budget() if budget is None else budget
    d = repair_degree(code)
    cases = code.n * math.comb(code.n - 1, d)
    if cases > budget:
        raise BudgetExceededError(f"{cases} repair scenarios exceed budget {budget}")
    rng = random.Random(seed)
    msg = [0] * code.k
    while not any(msg):
        msg = [rng.randrange(code.q) for _ in range(code.k)]
    states = encode(code, msg)
    for lost in range(1, code.n + 1):
        others = [v for v in range(1, code.n + 1) if v != lost]
        for H in combinations(others, d):
            try:
                t = repair(code, lost, H, states)
            except RepairError:
                return False
            if t.recovered != states[lost - 1].symbols or t.total > code.params.R:
                return False
    return True


@dataclass
class SymmetricRepair:
    lost: int
    helpers: tuple[int, ...]
    loads: dict[int, int]
    recovered: list[int]

    @property
    def total(self) -> int:
        return sum(self.loads.values())


class SymmetricCode:
    """``n!`` permuted copies of a code, giving every helper the same load.

    Copy ``c`` (permutation ``pi``) is an independent codeword; node ``i``
    keeps symbol ``pi(i)`` of every copy, so it stores ``n!`` symbols.
    """

    def __init__(self, code: LinearCode):
        if code.n > MAX_SYMMETRIZE_N:
            raise ValueError(f"symmetrization materializes n! copies; n={code.n} > {MAX_SYMMETRIZE_N}")
        self.code = code
        self.n = code.n
        self.perms = list(permutations(range(1, code.n + 1)))
        self.copies = len(self.perms)

    def _base_plan(self, lost: int, helpers: Sequence[int]):
        for pi in self.perms:
            T, coeffs = plan_repair(self.code, pi[lost - 1], [pi[v - 1] for v in helpers])
            inverse = {pi[v - 1]: v for v in range(1, self.n + 1)}
            yield [inverse[pos] for pos in T], coeffs

    def encode(self, messages: Sequence[Sequence[int]]) -> list[NodeState]:
        if len(messages) != self.copies:
            raise ValueError(f"need {self.copies} messages, one per copy")
        words = [self.code.generator.vecmul(m) for m in messages]
        return [
            NodeState(i, [word[pi[i - 1] - 1] for word, pi in zip(words, self.perms)])
            for i in range(1, self.n + 1)
        ]

    def repair_loads(self, lost: int, helpers: Sequence[int]) -> dict[int, int]:
        helpers = tuple(sorted(helpers))
        loads = dict.fromkeys(helpers, 0)
        for nodes, _ in self._base_plan(lost, helpers):
            for v in nodes:
                loads[v] += 1
        return loads

    def repair(self, lost: int, helpers: Sequence[int], states: Sequence[NodeState]) -> SymmetricRepair:
        d = repair_degree(self.code)
        helpers = tuple(sorted(set(helpers)))
        if lost in helpers or len(helpers) < d:
            raise ValueError(f"need d={d} helpers not including the lost node")
        by_index = {s.index: s for s in states}
        loads = dict.fromkeys(helpers, 0)
        recovered = []
        for c, (nodes, coeffs) in enumerate(self._base_plan(lost, helpers)):
            for v in nodes:
                loads[v] += 1
            recovered.append(
                sum(a * by_index[v].symbols[c] for v, a in zip(nodes, coeffs)) % self.code.q
            )
        return SymmetricRepair(lost, helpers, loads, recovered)

    def load_table(self) -> list[dict]:
        """Per-helper loads for every lost node and every ``d``-subset of helpers."""
        d = repair_degree(self.code)
        rows = []
        for lost in range(1, self.n + 1):
            others = [v for v in range(1, self.n + 1) if v != lost]
            for H in combinations(others, d):
                loads = self.repair_loads(lost, H)
                rows.append(
                    {
                        "lost": lost,
                        "helpers": list(H),
                        "loads": {str(v): c for v, c in loads.items()},
                        "balanced": len(set(loads.values())) == 1,
                    }
                )
        return rows

    def params(self) -> RegenParams:
        """Parameters of the symmetric code; ``gamma`` is the worst observed repair."""
        base = as_regen_params(self.code.params)
        worst = max(
            sum(self.repair_loads(lost, H).values())
            for lost in range(1, self.n + 1)
            for H in combinations([v for v in range(1, self.n + 1) if v != lost], base.d)
        )
        gamma = Fraction(worst)
        return RegenParams(
            n=base.n,
            k=base.k,
            d=base.d,
            alpha=Fraction(self.copies),
            gamma=gamma,
            B=Fraction(self.copies * self.code.k),
            beta=gamma / base.d,
        )

    def normalized_params(self) -> RegenParams:
        p = self.params()
        f = self.copies
        return RegenParams(p.n, p.k, p.d, p.alpha / f, p.gamma / f, p.B / f, p.beta / f)


def symmetrize(code: LinearCode) -> SymmetricCode:
    return SymmetricCode(code)
