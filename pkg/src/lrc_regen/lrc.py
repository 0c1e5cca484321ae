"""Linear locally repairable codes: parameter planning and generator matrices.

Node labels (columns of the generator, members of locality groups) are
1-based throughout this module and in the JSON artifact format.

Randomness comes from :class:`random.Random` (MT19937) seeded with the
caller's 64-bit seed, drawing field entries with ``randrange``; the output of
:func:`build_generator` is therefore reproducible across platforms.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Optional, Sequence

from .field import is_prime, next_prime
from .matrix import Matrix, columns_rank, rank

log = logging.getLogger(__name__)

CASE_I = "case_i"
CASE_II = "case_ii"

DEFAULT_RETRIES = 64
DEFAULT_ESCALATIONS = 4


class NoPlanError(ValueError):
    """No dimension satisfies the construction's constraints."""


class ConstructionError(RuntimeError):
    """Random sampling never produced a matrix in general position."""


@dataclass(frozen=True)
class LrcParams:
    N: int
    K: int
    D: int
    R: int
    Delta: int
    q: Optional[int] = None

    def __post_init__(self):
        if self.N < 1 or not 1 <= self.K <= self.N:
            raise ValueError(f"need 1 <= K <= N, got N={self.N}, K={self.K}")
        if not 1 <= self.D <= self.N:
            raise ValueError(f"need 1 <= D <= N, got D={self.D}")
        if self.R < 1 or self.Delta < 1:
            raise ValueError(f"need R >= 1 and Delta >= 1, got R={self.R}, Delta={self.Delta}")
        if self.q is not None and not is_prime(self.q):
            raise ValueError(f"field order must be prime, got {self.q}")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return self.N, self.K, self.D, self.R, self.Delta


@dataclass(frozen=True)
class ConstructionPlan:
    case_tag: str
    gap_s: int
    i: int
    t: int
    K: int
    m: int
    group_sizes: tuple[int, ...]
    group_ranks: tuple[int, ...]
    N: int
    D: int
    R: int
    Delta: int

    def groups(self) -> list[tuple[int, ...]]:
        """Consecutive 1-based index blocks ``F_1..F_m``."""
        out, start = [], 1
        for size in self.group_sizes:
            out.append(tuple(range(start, start + size)))
            start += size
        return out

    def summary(self) -> dict:
        return {
            "case": self.case_tag,
            "s": self.gap_s,
            "i": self.i,
            "t": self.t,
            "K": self.K,
            "m": self.m,
            "group_sizes": list(self.group_sizes),
            "group_ranks": list(self.group_ranks),
        }


@dataclass(frozen=True, eq=False)
class LinearCode:
    params: LrcParams
    partition: tuple[tuple[int, ...], ...]
    generator: Matrix
    seed: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        N, K = self.params.N, self.params.K
        if self.generator.shape != (K, N):
            raise ValueError(f"generator is {self.generator.shape}, expected {(K, N)}")
        if self.params.q is not None and self.params.q != self.generator.p:
            raise ValueError("params.q disagrees with generator modulus")
        labels = sorted(j for g in self.partition for j in g)
        if labels != list(range(1, N + 1)) or any(not g for g in self.partition):
            raise ValueError(f"partition {self.partition} is not a set partition of 1..{N}")
        if rank(self.generator) != K:
            raise ValueError(f"generator does not have full rank {K}")

    @property
    def n(self) -> int:
        return self.params.N

    @property
    def k(self) -> int:
        return self.params.K

    @property
    def q(self) -> int:
        return self.generator.p

    def column(self, j: int) -> tuple[int, ...]:
        """Column of node ``j`` (1-based)."""
        if not 1 <= j <= self.n:
            raise IndexError(f"node {j} out of range 1..{self.n}")
        return self.generator.column(j - 1)

    def columns(self, nodes: Sequence[int]) -> Matrix:
        """``G_X`` for 1-based node labels ``X``."""
        return self.generator.select_columns([j - 1 for j in nodes])

    def columns_rank(self, nodes: Sequence[int]) -> int:
        return columns_rank([self.column(j) for j in nodes], self.q)

    def group_of(self, j: int) -> tuple[int, ...]:
        for g in self.partition:
            if j in g:
                return g
        raise IndexError(f"node {j} is in no group")

    @cached_property
    def group_ranks(self) -> tuple[int, ...]:
        return tuple(self.columns_rank(g) for g in self.partition)

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and self.params == other.params
            and self.partition == other.partition
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash((self.params, self.partition, self.generator))


def gap_s(N: int, R: int, Delta: int) -> int:
    if R < 1 or Delta < 2:
        raise ValueError(f"need R >= 1 and Delta >= 2, got R={R}, Delta={Delta}")
    w = R + Delta - 1
    if N < w:
        raise ValueError(f"need N >= R + Delta - 1 = {w}, got N={N}")
    return -(-N // w) * w - N


def _check_prop_pre(N: int, D: int, R: int, Delta: int) -> None:
    if R < 1 or not 2 <= Delta <= D <= N - R + 1:
        raise NoPlanError(
            f"need 1 <= R and 2 <= Delta <= D <= N - R + 1, got N={N}, D={D}, R={R}, Delta={Delta}"
        )


def plan_construction(N: int, D: int, R: int, Delta: int) -> ConstructionPlan:
    """Solve for the dimension of the two-case LRC construction.

    With ``w = R + Delta - 1`` and ``s = ceil(N/w) w - N``, case (i) (``s < R``)
    needs ``K = R(i+1) - s - t = N + 1 - D - (Delta-1) i`` with ``i >= 0``,
    case (ii) needs ``K = R(i+1) - t = N + 1 - D - (Delta-1) i - (w - s)``
    with ``i >= 1``, and ``0 <= t < R`` in both. Eliminating ``K`` gives
    ``t = i w + R - A`` where ``A = N + 1 - D + s`` (case i) or
    ``A = N + 1 - D - (w - s)`` (case ii), hence ``i = ceil((A - R) / w)``.
    As ``R < w`` at most one ``i`` can work.
    """
    _check_prop_pre(N, D, R, Delta)
    w = R + Delta - 1
    if N < w:
        raise NoPlanError(f"N={N} is shorter than one locality group (R + Delta - 1 = {w})")
    s = gap_s(N, R, Delta)
    blocks = -(-N // w)
    if s < R:
        tag, i_min = CASE_I, 0
        A = N + 1 - D + s
    else:
        tag, i_min = CASE_II, 1
        A = N + 1 - D - (w - s)
    i = max(i_min, -(-(A - R) // w))
    t = i * w + R - A
    if not 0 <= t < R:
        raise NoPlanError(f"no (i, t) with 0 <= t < R for N={N}, D={D}, R={R}, Delta={Delta}")
    if tag == CASE_I:
        K = R * (i + 1) - s - t
        m = blocks
        sizes = (w,) * (m - 1) + (w - s,)
        ranks = (R,) * (m - 1) + (R - s,)
    else:
        K = R * (i + 1) - t
        m = blocks - 1
        sizes = (w,) * (m - 1) + (2 * w - s,)
        ranks = (R,) * m
    if K < 1:
        raise NoPlanError(f"construction gives K={K} < 1")
    if sum(ranks) < K:
        raise NoPlanError(f"group ranks {ranks} cannot support dimension K={K}")
    return ConstructionPlan(tag, s, i, t, K, m, sizes, ranks, N, D, R, Delta)


def _rand_matrix(rng: random.Random, nrows: int, ncols: int, p: int) -> list[list[int]]:
    return [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]


def _is_mds_block(block: list[list[int]], r: int, p: int) -> bool:
    cols = list(zip(*block))
    return all(columns_rank([cols[j] for j in sub], p) == r for sub in combinations(range(len(cols)), r))


def _sample_generator(plan: ConstructionPlan, q: int, rng: random.Random) -> Optional[list[list[int]]]:
    K = plan.K
    blocks = []
    for size, r in zip(plan.group_sizes, plan.group_ranks):
        # basis of a random r-dimensional column space
        basis = _rand_matrix(rng, K, r, q)
        if columns_rank(list(zip(*basis)), q) < r:
            return None
        spreader = _rand_matrix(rng, r, size, q)
        if not _is_mds_block(spreader, r, q):
            return None
        blocks.append((Matrix(basis, q) @ Matrix(spreader, q)).rows)
    return [sum((list(b[row]) for b in blocks), []) for row in range(K)]


def build_generator(
    plan: ConstructionPlan,
    q: Optional[int] = None,
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
    escalations: int = DEFAULT_ESCALATIONS,
) -> LinearCode:
    """Random generator matrix satisfying the construction's rank conditions.

    If ``q`` is omitted the search starts at the smallest prime above ``N``
    and, after ``retries`` failed samples, moves to a prime roughly twice as
    large, at most ``escalations`` times. An explicit ``q`` is used alone.
    Every returned code has passed the exhaustive construction check.
    """
    from .analysis import verify_construction

    if plan.N != sum(plan.group_sizes):
        raise ValueError("plan group sizes do not sum to N")
    rng = random.Random(seed)
    if q is not None:
        if not is_prime(q):
            raise ValueError(f"field order must be prime, got {q}")
        fields = [q]
    else:
        fields = [next_prime(plan.N)]
        for _ in range(escalations):
            fields.append(next_prime(2 * fields[-1] - 1))
    partition = tuple(plan.groups())
    for p in fields:
        for attempt in range(retries):
            rows = _sample_generator(plan, p, rng)
            if rows is None or columns_rank(rows, p) < plan.K:
                continue
            params = LrcParams(plan.N, plan.K, plan.D, plan.R, plan.Delta, p)
            code = LinearCode(params, partition, Matrix(rows, p), seed=seed)
            if verify_construction(code, plan).ok:
                log.debug("built code over GF(%d) after %d attempts", p, attempt + 1)
                return code
        log.debug("GF(%d): %d samples failed", p, retries)
    raise ConstructionError(
        f"no valid generator found over GF({fields[-1]}) after {retries} samples per field; "
        "try a larger prime q"
    )


def construct_mds(N: int, K: int, q: int) -> LinearCode:
    """Vandermonde ``[N, K]`` MDS code evaluated at ``0, 1, ..., N-1``."""
    if not is_prime(q):
        raise ValueError(f"field order must be prime, got {q}")
    if q < N:
        raise ValueError(f"need q >= N distinct evaluation points, got q={q} < N={N}")
    if not 1 <= K <= N:
        raise ValueError(f"need 1 <= K <= N, got K={K}")
    rows = [[pow(x, e, q) for x in range(N)] for e in range(K)]
    params = LrcParams(N, K, N - K + 1, K, N - K + 1, q)
    return LinearCode(params, (tuple(range(1, N + 1)),), Matrix(rows, q))


_EXAMPLE_MATRIX = (
    (1, 0, 1, 0, 0, 0, 1, 2),
    (0, 1, 1, 0, 0, 0, 1, 2),
    (0, 0, 0, 1, 0, 1, 1, 2),
    (0, 0, 0, 0, 1, 1, 1, 2),
    (0, 0, 0, 0, 0, 0, 1, 2),
)


def fixture_example() -> LinearCode:
    """The (8,5,2,3,2) reference LRC over GF(3) with groups {1,2,3},{4,5,6},{7,8}."""
    return LinearCode(
        LrcParams(8, 5, 2, 3, 2, 3),
        ((1, 2, 3), (4, 5, 6), (7, 8)),
        Matrix(_EXAMPLE_MATRIX, 3),
    )


def code_to_dict(code: LinearCode) -> dict:
    p = code.params
    return {
        "q": code.q,
        "n": p.N,
        "k": p.K,
        "r": p.R,
        "delta": p.Delta,
        "groups": [list(g) for g in code.partition],
        "matrix": code.generator.tolist(),
        "distance": p.D,
        "seed": code.seed,
    }


def code_from_dict(data: dict, distance: Optional[int] = None) -> LinearCode:
    """Rebuild a code from its JSON form.

    ``distance`` overrides the optional ``"distance"`` key; one of the two
    must be present (see :func:`lrc_regen.analysis.load_code`).
    """
    D = distance if distance is not None else data.get("distance")
    if D is None:
        raise ValueError("code artifact has no 'distance'; compute it first")
    q = int(data["q"])
    params = LrcParams(int(data["n"]), int(data["k"]), int(D), int(data["r"]), int(data["delta"]), q)
    groups = tuple(tuple(int(j) for j in g) for g in data["groups"])
    return LinearCode(params, groups, Matrix(data["matrix"], q), seed=data.get("seed"))


def save_code(code: LinearCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code)) + "\n", encoding="utf-8")
