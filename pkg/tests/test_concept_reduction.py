from math import comb

import numpy as np
import pytest

import naive
from conftest import TABLE2, TABLES, concept, table, table2
from rectfca.concept_reduction import (
    ConceptClass,
    class_counts,
    classify,
    classify_by_cover,
    classify_by_definition,
    complement_family_covers,
    core_concepts,
    cover_counts,
    gen_bound_context,
    greedy_reduction,
    is_consistent,
    is_reduction_set,
    is_side_covered,
    reduction_family,
)
from rectfca.context import FormalConcept, FormalContext
from rectfca.errors import InvalidArgumentError, ResourceLimitError
from rectfca.lattice import enumerate_concepts

CORE = ConceptClass.CORE
REL = ConceptClass.RELATIVELY_NECESSARY
UNN = ConceptClass.UNNECESSARY

# seeds chosen once; 60 contexts here, the acceptance module runs 200
RANDOM_SEEDS = range(60)


def small_random_context(seed: int, max_lattice: int = 14) -> FormalContext | None:
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 7)), int(rng.integers(1, 6))
    ctx = FormalContext(rng.random((m, n)) < 0.4)
    return ctx if len(enumerate_concepts(ctx)) <= max_lattice else None


# ------------------------------------------------------------ cover counting


def test_cover_counts_zero_off_relation_and_positive_on_it(t1):
    counts = cover_counts(t1, enumerate_concepts(t1))
    assert (counts[~t1.incidence] == 0).all()
    assert (counts[t1.incidence] >= 1).all()
    assert counts[4, 3] == 1  # cell (5, a4) only in C7


def test_consistency_examples(t1):
    lattice = enumerate_concepts(t1)
    assert is_consistent(t1, table2(t1, "C1", "C2", "C3", "C4", "C7"))
    assert is_consistent(t1, lattice)
    partial = table2(t1, "C1", "C2", "C3", "C4")
    assert not is_consistent(t1, partial)
    assert cover_counts(t1, partial)[4, 3] == 0


def test_consistency_rejects_non_concepts(t1):
    bogus = FormalConcept(t1.obj_set([4]), t1.attr_set([3, 4]))
    with pytest.raises(InvalidArgumentError):
        is_consistent(t1, [bogus])


def test_reduction_set_examples(t1):
    assert is_reduction_set(t1, table2(t1, "C1", "C4", "C5", "C6", "C7", "C8"))
    assert is_reduction_set(t1, table2(t1, "C1", "C2", "C3", "C4", "C7"))
    assert not is_reduction_set(t1, enumerate_concepts(t1))
    assert not is_reduction_set(t1, table2(t1, "C1"))
    # a reduction set plus a removable member is no longer irredundant
    assert not is_reduction_set(t1, table2(t1, "C1", "C2", "C3", "C4", "C7", "C9"))


# ------------------------------------------------------------ classification


def test_core_examples():
    t1 = table("table1")
    assert set(core_concepts(t1)) == set(table2(t1, "C1", "C4", "C7"))
    t3 = table("table3")
    c1 = concept(t3, {4, 5, 6}, {"a2", "a3", "a4", "a5"})
    c2 = concept(t3, {1, 2, 3}, {"a1", "a2", "a3"})
    assert set(core_concepts(t3)) == {c1, c2}
    assert len(core_concepts(table("table5"))) == 0


def test_core_requires_full_lattice(t1):
    with pytest.raises(InvalidArgumentError):
        core_concepts(t1, enumerate_concepts(t1)[:4])


def test_side_covered_examples():
    t1 = table("table1")
    assert is_side_covered(t1, concept(t1, *TABLE2["C9"]))
    assert not is_side_covered(t1, concept(t1, *TABLE2["C7"]))
    t4 = table("table4")
    assert is_side_covered(t4, concept(t4, {1, 2, 3}, {"a1", "a2", "a3"}))


def test_table1_classification(t1):
    result = classify(t1)
    expect = {**{k: CORE for k in ("C1", "C4", "C7")}, **{k: REL for k in ("C2", "C3", "C5", "C6", "C8")}}
    expect.update(C9=UNN, C0=UNN, C10=UNN)
    for name, cls in expect.items():
        assert result[concept(t1, *TABLE2[name])] is cls, name
    counts = class_counts(result)
    assert (counts[CORE], counts[REL], counts[UNN]) == (3, 5, 3)


def test_table3_and_table4_examples():
    t3 = table("table3")
    r3 = classify(t3)
    assert r3[concept(t3, {1, 2, 3, 4, 5, 6}, {"a2", "a3"})] is UNN
    t4 = table("table4")
    r4 = classify(t4)
    c4 = concept(t4, {1, 2, 3, 7}, {"a1", "a2"})
    assert r4[c4] is REL
    assert r4[concept(t4, {1, 2, 3}, {"a1", "a2", "a3"})] is UNN
    assert r4[concept(t4, {4, 5, 6}, {"a2", "a3", "a4", "a5"})] is CORE


def test_table4_complement_family_misses_c4():
    # generators outside C4 are C1, C5, C6 and leave C4's cells uncovered
    t4 = table("table4")
    c4 = concept(t4, {1, 2, 3, 7}, {"a1", "a2"})
    assert not complement_family_covers(t4, c4)
    family = [t4.object_concept(g) for g in range(8) if g not in (0, 1, 2, 6)]
    family += [t4.attribute_concept(a) for a in (2, 3, 4)]
    assert set(family) == {
        concept(t4, {4, 5, 6}, {"a2", "a3", "a4", "a5"}),
        concept(t4, {1, 2, 3, 8}, {"a1", "a3"}),
        concept(t4, {1, 2, 3, 4, 5, 6, 8}, {"a3"}),
    }


def test_table6_c7_unnecessary():
    t6 = table("table6")
    assert classify(t6)[concept(t6, {7}, {"a1", "a2", "a3"})] is UNN


@pytest.mark.parametrize("name", sorted(TABLES))
def test_fixture_tables_agree_with_oracle(name):
    ctx = table(name)
    oracle = classify_by_definition(ctx, cap=20)
    assert classify(ctx) == oracle
    assert classify_by_cover(ctx) == oracle


@pytest.mark.parametrize("name", ["table1", "table3", "table4"])
def test_vectorized_oracle_matches_subset_search(name):
    ctx = table(name)
    lattice = enumerate_concepts(ctx)
    pairs = [(set(c.extent), set(c.intent)) for c in lattice]
    expected = set(naive.reduction_sets(ctx.incidence.tolist(), pairs))
    got = {frozenset(lattice.index(c) for c in fam) for fam in reduction_family(ctx)}
    assert got == expected


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_random_contexts_agree_with_oracle(seed):
    ctx = small_random_context(seed)
    if ctx is None:
        pytest.skip("lattice above oracle size")
    oracle = classify_by_definition(ctx)
    assert classify(ctx) == oracle
    assert classify_by_cover(ctx) == oracle
    family = reduction_family(ctx)
    assert family, "a reduction set always exists"
    for fam in family:
        assert is_reduction_set(ctx, fam)
    for c, cls in oracle.items():
        inside = sum(c in fam for fam in family)
        if cls is UNN:
            assert inside == 0
        elif cls is REL:
            assert 0 < inside < len(family)
        else:
            assert inside == len(family)


def test_single_incidence():
    ctx = FormalContext([[True]])
    result = classify_by_definition(ctx)
    nonempty = [c for c in result if not c.is_empty_rectangle]
    assert len(nonempty) == 1 and result[nonempty[0]] is CORE


def test_empty_relation_everything_unnecessary():
    ctx = FormalContext(np.zeros((2, 2), dtype=bool))
    assert set(classify(ctx).values()) == {UNN}
    assert set(classify_by_definition(ctx).values()) == {UNN}


def test_oracle_cap():
    with pytest.raises(ResourceLimitError):
        classify_by_definition(table("table5"))
    assert len(classify_by_definition(table("table5"), cap=17)) == 17


@pytest.mark.parametrize("seed", range(300))
def test_core_count_bounded_by_dimensions(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 13)), int(rng.integers(1, 13))
    ctx = FormalContext(rng.random((m, n)) < 0.4)
    assert len(core_concepts(ctx)) <= min(m, n)


# ------------------------------------------------------------ greedy reduction


def test_greedy_in_listed_order(t1):
    order = table2(t1, *TABLE2)  # C0, C1, ..., C10
    kept = greedy_reduction(t1, order=order)
    assert set(kept) == set(table2(t1, "C1", "C4", "C5", "C6", "C7", "C8"))
    assert is_reduction_set(t1, kept)


def test_greedy_in_canonical_order(t1):
    kept = greedy_reduction(t1)
    assert set(kept) == set(table2(t1, "C1", "C2", "C3", "C4", "C7"))


def test_greedy_rejects_non_permutations(t1):
    with pytest.raises(InvalidArgumentError):
        greedy_reduction(t1, order=[0, 0, 1])


def test_greedy_table5_different_orders_reach_different_members():
    # every nonempty concept is relatively necessary, so the union of greedy outputs grows past one reduct
    ctx = table("table5")
    lattice = enumerate_concepts(ctx)
    rng = np.random.default_rng(5)
    seen = set()
    for _ in range(40):
        kept = greedy_reduction(ctx, lattice, rng.permutation(len(lattice)).tolist())
        assert is_reduction_set(ctx, kept)
        assert all(not c.is_empty_rectangle for c in kept)
        seen |= set(kept)
    assert len(seen) > len(kept)
    nonempty = [c for c in lattice if not c.is_empty_rectangle]
    assert len(nonempty) == 15
    assert is_consistent(ctx, nonempty) and not is_reduction_set(ctx, nonempty)


def test_greedy_on_empty_relation():
    ctx = FormalContext(np.zeros((2, 3), dtype=bool))
    assert len(greedy_reduction(ctx, order=[1, 0])) == 0


@pytest.mark.parametrize("seed", range(20))
def test_greedy_outputs_are_reductions_containing_all_cores(seed):
    rng = np.random.default_rng(seed)
    ctx = FormalContext(rng.random((int(rng.integers(2, 10)), int(rng.integers(2, 8)))) < 0.4)
    lattice = enumerate_concepts(ctx)
    cores = set(core_concepts(ctx, lattice))
    for _ in range(50):
        kept = greedy_reduction(ctx, lattice, rng.permutation(len(lattice)).tolist())
        assert is_reduction_set(ctx, kept)
        assert cores <= set(kept)


# ------------------------------------------------------------ extremal contexts


def test_generators_reproduce_listed_tables():
    assert gen_bound_context(5, "relative") == table("table5")
    assert gen_bound_context(4, "unnecessary") == table("table6")
    assert gen_bound_context(2, "relative").incidence.tolist() == [[True, False], [False, True]]


def test_generator_shapes():
    for n in range(2, 9):
        h = n // 2
        assert gen_bound_context(n, "relative").m == comb(n, h)
        assert gen_bound_context(n, "unnecessary").m == comb(n, h) + comb(n, h + 1)


@pytest.mark.parametrize("bad", [(1, "relative"), (21, "relative"), (4, "other")])
def test_generator_rejects_bad_input(bad):
    with pytest.raises(InvalidArgumentError):
        gen_bound_context(*bad)


def test_relative_generator_for_three_is_all_core():
    # 1-subsets of 3 attributes give the identity table; the bound does not hold here
    ctx = gen_bound_context(3, "relative")
    result = classify(ctx)
    assert class_counts(result, nonempty_only=True) == {CORE: 3, REL: 0, UNN: 0}
    assert result == classify_by_definition(ctx)


@pytest.mark.parametrize("n", [4, 5])
def test_relative_bound(n):
    ctx = gen_bound_context(n, "relative")
    result = classify(ctx)
    assert class_counts(result, nonempty_only=True)[REL] >= comb(n, n // 2) + n
    assert result == classify_by_definition(ctx, cap=20)


def test_relative_bound_is_exact_for_five():
    counts = class_counts(classify(gen_bound_context(5, "relative")), nonempty_only=True)
    assert counts == {CORE: 0, REL: 15, UNN: 0}


@pytest.mark.parametrize("n", [3, 4])
def test_unnecessary_bound(n):
    ctx = gen_bound_context(n, "unnecessary")
    result = classify(ctx)
    assert class_counts(result, nonempty_only=True)[UNN] >= comb(n, n // 2 + 1)
    assert result == classify_by_definition(ctx, cap=20)
