import random
from itertools import combinations

import pytest

from lrc_regen.analysis import (
    _witness_failure,
    BudgetExceededError,
    enumeration_budget,
    is_prop_optimal,
    min_distance,
    singleton_bound,
    verify_construction,
    verify_locality,
)
from lrc_regen.lrc import (
    CASE_I,
    ConstructionPlan,
    LinearCode,
    LrcParams,
    construct_mds,
    plan_construction,
)
from lrc_regen.matrix import Matrix, rank


def random_code(rng, p, K, N):
    while True:
        G = Matrix([[rng.randrange(p) for _ in range(N)] for _ in range(K)], p)
        if rank(G) == K:
            return LinearCode(LrcParams(N, K, 1, K, 1, p), (tuple(range(1, N + 1)),), G)


def test_min_distance_examples(fixture_code):
    assert min_distance(fixture_code, "rank_based") == 2
    assert min_distance(fixture_code, "codeword_enum") == 2
    ident = LinearCode(LrcParams(4, 4, 1, 4, 1, 5), ((1, 2, 3, 4),), Matrix.identity(4, 5))
    assert min_distance(ident) == 1
    assert min_distance(construct_mds(4, 2, 5), "codeword_enum") == 3


def test_min_distance_methods_agree_on_random_codes():
    rng = random.Random(2024)
    for _ in range(40):
        p = rng.choice([2, 3, 5, 7])
        N = rng.randint(2, 8)
        K = rng.randint(1, N)
        if p**K > 10**5:
            continue
        code = random_code(rng, p, K, N)
        assert min_distance(code, "rank_based") == min_distance(code, "codeword_enum")


def test_codeword_enum_budget(fixture_code):
    with pytest.raises(BudgetExceededError):
        min_distance(fixture_code, "codeword_enum", budget=100)
    assert min_distance(fixture_code, "auto", budget=100) == 2


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("LRC_REGEN_BUDGET", "1234")
    assert enumeration_budget() == 1234
    monkeypatch.delenv("LRC_REGEN_BUDGET")
    assert enumeration_budget() == 10**7


def test_unknown_method(fixture_code):
    with pytest.raises(ValueError):
        min_distance(fixture_code, "magic")


def test_locality_fixture(fixture_code):
    rep = verify_locality(fixture_code, 3, 2)
    assert rep.ok
    assert rep.witnesses[8] == (7, 8)
    assert rep.witnesses[1] == (1, 2, 3)
    bad = verify_locality(fixture_code, 3, 3)
    assert not bad.ok
    assert bad.failure["symbol"] == 1


def test_locality_group_78_fails_with_delta_3(fixture_code):
    # with Delta = 3 the pair {7, 8} would have to repair from 0 helpers
    assert _witness_failure(fixture_code, (7, 8), 3) == {"set": [7, 8], "lost": 7, "helpers": []}
    assert _witness_failure(fixture_code, (7, 8), 2) is None


def test_locality_exhaustive_agrees_on_fixture(fixture_code):
    assert verify_locality(fixture_code, 3, 2, exhaustive=True).ok
    assert not verify_locality(fixture_code, 3, 3, exhaustive=True).ok


def test_locality_mds():
    for N, K, q in [(5, 3, 5), (6, 2, 7), (4, 4, 5)]:
        code = construct_mds(N, K, q)
        assert verify_locality(code, K, N - K + 1).ok


def test_locality_definition_by_brute_force(fixture_code):
    """Locality verdicts match a direct reading of the definition (small N)."""
    code = fixture_code
    for R, Delta in [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2)]:
        width = R + Delta - 1
        expected = True
        for j in range(1, code.n + 1):
            has = False
            for size in range(1, width + 1):
                for S in combinations(range(1, code.n + 1), size):
                    if j not in S:
                        continue
                    h = size - Delta + 1
                    if h < 0:
                        continue
                    ok = all(
                        code.columns_rank(T + (x,)) == (code.columns_rank(T) if T else 0)
                        for x in S
                        for T in combinations([y for y in S if y != x], h)
                    )
                    has = has or ok
            expected = expected and has
        assert verify_locality(code, R, Delta, exhaustive=True).ok == expected, (R, Delta)


def test_singleton_bound():
    assert singleton_bound(24, 16, 3, 2) == 4
    assert singleton_bound(8, 5, 3, 2) == 3
    for N, K in [(10, 4), (7, 7), (9, 1)]:
        assert singleton_bound(N, K, K, 5) == N - K + 1


def test_verify_construction(built_codes):
    for plan, code in built_codes.values():
        rep = verify_construction(code, plan)
        assert rep.ok, rep.failure


def test_verify_construction_by_hand_subset(built_codes):
    plan, code = built_codes[(8, 2, 3, 2)]
    # columns {1,2,3,5,6,7} respect caps 3 and 3: must be independent
    assert code.columns_rank((1, 2, 3, 5, 6, 7)) == 6
    # four columns from one rank-3 group: dependent
    assert code.columns_rank((1, 2, 3, 4)) == 3


def test_verify_construction_rejects_fabricated_plan(fixture_code):
    fake = ConstructionPlan(CASE_I, 0, 0, 0, 5, 3, (3, 3, 2), (2, 2, 3), 8, 2, 3, 2)
    rep = verify_construction(fixture_code, fake)
    assert not rep.ok
    assert "rank 1" in rep.failure


def test_verify_construction_mds():
    code = construct_mds(6, 3, 7)
    plan = ConstructionPlan(CASE_I, 0, 0, 0, 3, 1, (6,), (3,), 6, 4, 3, 4)
    assert verify_construction(code, plan).ok


def test_is_prop_optimal():
    assert is_prop_optimal(plan_construction(8, 2, 3, 2))
    assert is_prop_optimal(plan_construction(10, 2, 3, 2))
    assert not is_prop_optimal(plan_construction(9, 3, 2, 3))
    for N in range(4, 15):
        for R in range(1, 4):
            try:
                p = plan_construction(N, 2, R, 2)
            except ValueError:
                continue
            if p.case_tag == CASE_I and p.gap_s == 0:
                assert is_prop_optimal(p)


def test_constructed_codes_respect_bounds(built_codes):
    for plan, code in built_codes.values():
        D = min_distance(code)
        assert plan.D <= D <= singleton_bound(plan.N, plan.K, plan.R, plan.Delta)
