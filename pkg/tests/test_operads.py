import itertools

import pytest

from computadlab.freecat import Bounds
from computadlab.operads import (
    COMMUTATIVE_MONOID_PRESENTATION, DOUBLE_MONOID_SHARED_UNIT_PRESENTATION,
    MONOID_PRESENTATION, GlobularCollection, NonSymCollection, OperadError,
    Presentation, SymCollection, all_perms, collection_violation,
    eval_analytic, eval_strongly_analytic, free_sym_collection,
    is_strongly_regular_presentation, known_slice_oracle, parse_presentation,
    regular_sym_collection, slice_matches_oracle, slice_of_strict,
    strong_analytic_bijection, trivial_sym_collection,
)

# --- independent oracles -------------------------------------------------------


def brute_orbit_count(a: SymCollection, xs, arity_bound):
    """Orbit counting by building every orbit as a frozenset."""
    orbits = set()
    for n in a.arities():
        if n > arity_bound:
            continue
        for e in a.sets[n]:
            for v in itertools.product(xs, repeat=n):
                orbit = frozenset(
                    (n, repr(a.act(n, p, e)), _place(p, v)) for p in all_perms(n))
                orbits.add(orbit)
    return len(orbits)


def _place(p, v):
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[p[i]] = x
    return tuple(out)


def multiset_count(n_elems, max_size):
    total = 0
    for s in range(max_size + 1):
        total += len(list(itertools.combinations_with_replacement(range(n_elems), s)))
    return total


def list_count(n_elems, max_size):
    return sum(n_elems**s for s in range(max_size + 1))


# --- analytic evaluation --------------------------------------------------------


def test_commutative_collection_gives_multisets():
    a = trivial_sym_collection({0: ["*"], 1: ["*"], 2: ["*"]})
    out = eval_analytic(a, ["x", "y"], 2)
    assert len(out) == 6  # multisets of size <= 2 over two elements
    assert len(out) == brute_orbit_count(a, ["x", "y"], 2)


def test_regular_collection_gives_lists():
    a = regular_sym_collection(2)
    out = eval_analytic(a, ["x", "y"], 2)
    assert len(out) == 7  # 1 + 2 + 4
    assert len(out) == brute_orbit_count(a, ["x", "y"], 2)


def test_eval_analytic_empty_set_keeps_constants():
    a = trivial_sym_collection({0: ["c"], 2: ["m"]})
    out = eval_analytic(a, [], 3)
    assert len(out) == 1 and out[0][1] == "c"


def test_eval_strongly_analytic_counts():
    a = NonSymCollection({n: ["*"] for n in range(4)})
    assert len(eval_strongly_analytic(a, ["x", "y"], 3)) == 15
    only_constant = NonSymCollection({0: ["c"]})
    assert len(eval_strongly_analytic(only_constant, ["x", "y"], 3)) == 1
    empty = NonSymCollection({})
    assert eval_strongly_analytic(empty, ["x"], 3) == []


def test_collection_violation_catches_broken_action():
    a = trivial_sym_collection({2: ["m", "w"]})
    a.action[2][(1, 0)]["m"] = "w"  # transposition no longer an involution map pair
    a.action[2][(1, 0)]["w"] = "w"
    assert collection_violation(a) is not None


def test_free_symmetric_agrees_with_strongly_analytic():
    nonsym = NonSymCollection({0: ["u"], 1: ["a", "b"], 2: ["m"], 3: ["t", "s"]})
    for size in range(4):
        xs = [f"x{i}" for i in range(size)]
        free = free_sym_collection(nonsym)
        orbits = eval_analytic(free, xs, 3)
        plain = eval_strongly_analytic(nonsym, xs, 3)
        assert len(orbits) == len(plain)
        pairing = strong_analytic_bijection(nonsym, xs, 3)
        assert sorted(map(repr, pairing.values())) == sorted(map(repr, plain))
        assert len(set(pairing.values())) == len(pairing)


def test_eval_monotone_in_bounds():
    a = trivial_sym_collection({n: ["*"] for n in range(4)})
    sizes = [len(eval_analytic(a, ["x", "y"], b)) for b in range(4)]
    assert sizes == sorted(sizes)
    grow = [len(eval_analytic(a, [f"x{i}" for i in range(m)], 2))
            for m in range(4)]
    assert grow == sorted(grow)


# --- strong regularity ------------------------------------------------------------


def test_monoid_is_strongly_regular():
    p = parse_presentation(MONOID_PRESENTATION)
    assert is_strongly_regular_presentation(p).strongly_regular


def test_commutative_monoid_fails_with_permutation():
    p = parse_presentation(COMMUTATIVE_MONOID_PRESENTATION)
    verdict = is_strongly_regular_presentation(p)
    assert not verdict.strongly_regular
    assert verdict.violation == "permutation"
    assert verdict.equation_index == 3


def test_double_monoid_shared_unit_is_strongly_regular():
    p = parse_presentation(DOUBLE_MONOID_SHARED_UNIT_PRESENTATION)
    assert is_strongly_regular_presentation(p).strongly_regular


def test_repetition_and_deletion_witnesses():
    p = parse_presentation("op m : 2\neq m(x,x) = x\n")
    v = is_strongly_regular_presentation(p)
    assert v.violation == "repetition"
    p = parse_presentation("op m : 2\nop e : 0\neq m(x,y) = x\n")
    v = is_strongly_regular_presentation(p)
    assert v.violation == "deletion"


def test_regularity_invariant_under_renaming_and_reordering():
    base = parse_presentation(MONOID_PRESENTATION)
    renamed = parse_presentation(
        MONOID_PRESENTATION.replace("x", "alpha").replace("y", "beta")
        .replace("z", "gamma"))
    reordered = Presentation(base.ops, list(reversed(base.equations)))
    for p in (base, renamed, reordered):
        assert is_strongly_regular_presentation(p).strongly_regular
    commutative = parse_presentation(
        COMMUTATIVE_MONOID_PRESENTATION.replace("x", "u").replace("y", "w"))
    assert is_strongly_regular_presentation(commutative).violation == "permutation"


def test_parser_rejects_bad_input():
    with pytest.raises(OperadError):
        parse_presentation("op m : two\n")
    with pytest.raises(OperadError):
        parse_presentation("op m : 2\neq m(x) = x\n")
    with pytest.raises(OperadError):
        parse_presentation("eq f(x) = x\n")


# --- slices -------------------------------------------------------------------------


def test_first_slice_is_free_monoid():
    res = slice_of_strict(1, ["a", "b"], Bounds(size=3))
    assert res.counts == {0: 1, 1: 2, 2: 4, 3: 8}
    ok, expected = slice_matches_oracle(res)
    assert ok and expected == res.counts
    assert res.unknown_verdicts == 0 and res.fixed_point


def test_second_slice_is_free_commutative_monoid():
    res = slice_of_strict(2, ["a", "b"], Bounds(size=3))
    assert res.counts == {0: 1, 1: 2, 2: 3, 3: 4}
    ok, _ = slice_matches_oracle(res)
    assert ok
    assert res.unknown_verdicts == 0 and res.fixed_point


def test_slice_on_empty_set_is_the_unit():
    res = slice_of_strict(1, [], Bounds(size=3))
    assert res.counts == {0: 1}


@pytest.mark.parametrize("k,n", [(1, 1), (1, 3), (2, 1), (2, 3)])
def test_slice_oracle_agreement_across_sizes(k, n):
    size = 4
    res = slice_of_strict(k, [f"g{i}" for i in range(n)], Bounds(size=size))
    expected = ({s: n**s for s in range(size + 1)} if k == 1 else
                {s: len(list(itertools.combinations_with_replacement(range(n), s)))
                 for s in range(size + 1)})
    assert res.counts == expected
    assert res.unknown_verdicts == 0


def test_slice_three_matches_commutative_oracle():
    res = slice_of_strict(3, ["a", "b"], Bounds(size=2, rounds=30))
    assert res.counts == {0: 1, 1: 2, 2: 3}


# --- the oracle catalog ----------------------------------------------------------------


def test_known_oracles():
    fm = known_slice_oracle("free-monoid")
    assert len(fm.eval_fn(["a", "b"], 3)) == list_count(2, 3) == 15
    fc = known_slice_oracle("free-commutative-monoid")
    assert len(fc.eval_fn(["a", "b"], 3)) == multiset_count(2, 3) == 10
    dm = known_slice_oracle("double-monoid-shared-unit")
    assert is_strongly_regular_presentation(dm.presentation).strongly_regular
    z = known_slice_oracle("zero-slice-monoid")
    assert len(z.eval_fn(["a", "b", "c"], 3)) == 3
    bi = known_slice_oracle("bicategory-first-slice")
    assert {n: len(v) for n, v in bi.collection.sets.items()} == {0: 1, 1: 1, 2: 1}
    assert bi.note
    with pytest.raises(OperadError):
        known_slice_oracle("nonexistent")


def test_globular_collection_height_bound():
    from computadlab.pasting import LEAF, Tree
    coll = GlobularCollection(1, {LEAF: ["a"], Tree((LEAF,)): ["b"]})
    assert coll.violation() is None
    bad = GlobularCollection(0, {Tree((LEAF,)): ["b"]})
    assert bad.violation() is not None
