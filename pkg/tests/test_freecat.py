import random

import pytest

from computadlab.computads import build_computad, free_algebra, theta_computad
from computadlab.freecat import (
    Bounds, Comp, DISTINCT, EQUAL, FreecatError, Gen, Id, UNKNOWN,
    enumerate_cells, equal_cells, generate_terms, saturate, saturation_round,
    term_dim, term_from_str, term_to_str, verify_certificate,
)

# --- independent oracles ---------------------------------------------------------


def dfs_paths(vertices, edges, max_len):
    """Composable edge sequences (start, names) by depth-first extension;
    edges is a list of (name, src, tgt)."""
    out = [(v, ()) for v in vertices]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for start, word in frontier:
            at = next(t for n, s, t in edges if n == word[-1]) if word else start
            for name, s, t in edges:
                if s == at:
                    nxt.append((start, word + (name,)))
        out.extend(nxt)
        frontier = nxt
    return out


def multisets(gens, size):
    import itertools
    out = []
    for n in range(size + 1):
        out.extend(itertools.combinations_with_replacement(sorted(gens), n))
    return out


def graph_computad(vertices, edges, bounds):
    layers = [list(vertices),
              [(n, Gen(s, 0), Gen(t, 0)) for n, s, t in edges]]
    return build_computad(layers, bounds)


def scalar_computad(names, bounds=Bounds(size=4)):
    pt = Gen("p", 0)
    return build_computad([["p"], [], [(n, Id(pt), Id(pt)) for n in names]],
                          bounds)


def random_graph(rng, max_v=4, max_e=5):
    nv = rng.randint(1, max_v)
    vertices = [f"v{i}" for i in range(nv)]
    ne = rng.randint(0, max_e)
    edges = [(f"e{i}", rng.choice(vertices), rng.choice(vertices))
             for i in range(ne)]
    return vertices, edges


def decode_word(rep: str) -> tuple:
    """Generator leaves of a dimension-1 representative, left to right."""
    t = term_from_str(rep)

    def leaves(u):
        if isinstance(u, Gen):
            return (u.name,)
        if isinstance(u, Id):
            return ()
        return leaves(u.left) + leaves(u.right)

    return leaves(t)


# --- term syntax -----------------------------------------------------------------


def test_term_syntax_round_trip():
    dims = {"p": 0, "f": 1, "al": 2}
    terms = [
        Gen("p", 0),
        Id(Gen("p", 0)),
        Comp(0, Gen("f", 1), Gen("f", 1)),
        Comp(1, Comp(0, Id(Gen("f", 1)), Gen("al", 2)), Gen("al", 2)),
    ]
    for t in terms:
        assert term_from_str(term_to_str(t), dims) == t
    assert term_dim(terms[-1]) == 2


def test_term_syntax_rejects_garbage():
    for bad in ["gen(", "comp_x(gen(a),gen(b))", "id1(gen(a)) extra", "foo(a)"]:
        with pytest.raises(FreecatError):
            term_from_str(bad)


# --- generation ------------------------------------------------------------------


def test_point_generates_only_identities():
    fa = free_algebra(theta_computad(2), Bounds(size=3))
    for r in (1, 2):
        assert fa.class_count(r) == 1
        rows, _ = fa.enumerate_cells(r)
        assert rows[0][1] == ()  # no generator occurrences anywhere


def test_two_loops_generate_paths():
    c = graph_computad(["a", "b"], [("f", "a", "b"), ("g", "b", "a")],
                       Bounds(size=2))
    fa = free_algebra(c, Bounds(size=2))
    rows, _ = fa.enumerate_cells(1)
    words = {decode_word(rep) for rep, _ in rows}
    assert words == {(), ("f",), ("g",), ("f", "g"), ("g", "f")}
    # two identity classes share the empty word but have different endpoints
    assert fa.class_count(1) == 6


def test_boundary_checks_on_terms():
    c = graph_computad(["a", "b"], [("f", "a", "b")], Bounds(size=3))
    fa = free_algebra(c, Bounds(size=3))
    e = fa.engines[1]
    assert e.term_node(Comp(0, Gen("f", 1), Gen("f", 1))) is None  # b != a
    assert e.term_node(Comp(0, Id(Gen("a", 0)), Gen("f", 1))) is not None


# --- saturation ------------------------------------------------------------------


def test_saturation_round_fixed_point_when_nothing_applies():
    fa = free_algebra(theta_computad(1), Bounds(size=2))
    e = fa.engines[1]
    before = (len(e.nodes), len(e.log))
    saturation_round(e)
    assert (len(e.nodes), len(e.log)) == before


def test_associativity_merges_in_one_round():
    c = graph_computad(["a", "b", "c", "d"],
                       [("f", "a", "b"), ("g", "b", "c"), ("h", "c", "d")],
                       Bounds(size=3))
    fa = free_algebra(c, Bounds(size=3))
    e = fa.engines[1]
    f, g, h = Gen("f", 1), Gen("g", 1), Gen("h", 1)
    left = e.term_node(Comp(0, Comp(0, f, g), h))
    right = e.term_node(Comp(0, f, Comp(0, g, h)))
    assert e.find(left) == e.find(right)


def test_eckmann_hilton_within_two_rounds():
    from computadlab.freecat import Engine
    fa1 = free_algebra(theta_computad(1), Bounds(size=2))
    e = Engine(2, fa1.levels, [("al", 0, 0), ("be", 0, 0)], Bounds(size=2))
    for _ in range(2):
        e.extend_composites()
        e.saturation_round()
    a = e.term_node(Comp(0, Gen("al", 2), Gen("be", 2)))
    b = e.term_node(Comp(1, Gen("al", 2), Gen("be", 2)))
    assert e.find(a) == e.find(b)


def test_saturate_acyclic_graph_classes_are_paths():
    rng = random.Random(5)
    for _ in range(10):
        nv = rng.randint(2, 4)
        vertices = [f"v{i}" for i in range(nv)]
        edges = []
        for i in range(rng.randint(0, 5)):
            s = rng.randint(0, nv - 2)
            t = rng.randint(s + 1, nv - 1)
            edges.append((f"e{i}", f"v{s}", f"v{t}"))
        c = graph_computad(vertices, edges, Bounds(size=6))
        fa = free_algebra(c, Bounds(size=6))
        assert fa.fixed_point
        oracle = dfs_paths(vertices, edges, 6)
        assert fa.class_count(1) == len(oracle)


def test_scalar_classes_are_multisets():
    fa = free_algebra(scalar_computad(["al", "be"]), Bounds(size=4))
    rows, _ = fa.enumerate_cells(2)
    assert sorted(m for _, m in rows) == sorted(multisets(["al", "be"], 4))


# --- equality verdicts -----------------------------------------------------------


def test_equal_cells_reflexive_and_distinct():
    fa = free_algebra(scalar_computad(["al", "be"]), Bounds(size=2))
    e = fa.engines[2]
    al, be = Gen("al", 2), Gen("be", 2)
    verdict, cert = equal_cells(e, al, al)
    assert verdict == EQUAL and verify_certificate(e, cert)
    verdict, why = equal_cells(e, al, be)
    assert verdict == DISTINCT and "multiset" in why


def test_equal_cells_eckmann_hilton_certified():
    fa = free_algebra(scalar_computad(["al", "be"]), Bounds(size=2))
    e = fa.engines[2]
    al, be = Gen("al", 2), Gen("be", 2)
    for t1, t2 in [(Comp(0, al, be), Comp(1, al, be)),
                   (Comp(1, al, be), Comp(1, be, al))]:
        verdict, cert = equal_cells(e, t1, t2)
        assert verdict == EQUAL
        assert verify_certificate(e, cert)
        assert cert.steps


def test_explain_path_renders_merge_chain():
    from computadlab.freecat import explain_path
    fa = free_algebra(scalar_computad(["al", "be"]), Bounds(size=2))
    e = fa.engines[2]
    u = e.term_node(Comp(0, Gen("al", 2), Gen("be", 2)))
    v = e.term_node(Comp(1, Gen("al", 2), Gen("be", 2)))
    path = explain_path(e, u, v)
    assert path and all("==" in step for step in path)


def test_term_budget_guard():
    from computadlab.freecat import Engine, EngineLimit, level_zero
    lv = level_zero(["p"])
    with pytest.raises(EngineLimit):
        e = Engine(1, [lv], [(f"g{i}", 0, 0) for i in range(4)],
                   Bounds(size=4, max_terms=8))
        for _ in range(6):
            e.extend_composites()
            e.saturation_round()


def test_certificate_tampering_is_caught():
    fa = free_algebra(scalar_computad(["al", "be"]), Bounds(size=2))
    e = fa.engines[2]
    al, be = Gen("al", 2), Gen("be", 2)
    verdict, cert = equal_cells(e, Comp(0, al, be), Comp(1, be, al))
    assert verdict == EQUAL and verify_certificate(e, cert)
    # claim an axiom step between two inequivalent terms
    u = e.term_node(al)
    v = e.term_node(be)
    cert.steps.append((u, v, ("ax", "assoc", 0)))
    cert.left, cert.right = u, v
    assert not verify_certificate(e, cert)


def test_unknown_is_honest_for_parallel_nonscalar_squares():
    # two 2-cells on a genuine arrow: no room for Eckmann-Hilton, so the
    # vertical composites in the two orders stay apart and the engine
    # must not claim either verdict
    f = Gen("f", 1)
    c = build_computad(
        [["a", "b"],
         [("f", Gen("a", 0), Gen("b", 0))],
         [("u", f, f), ("v", f, f)]],
        Bounds(size=2))
    fa = free_algebra(c, Bounds(size=2))
    e = fa.engines[2]
    u, v = Gen("u", 2), Gen("v", 2)
    verdict, _ = equal_cells(e, Comp(1, u, v), Comp(1, v, u))
    assert verdict == UNKNOWN
    assert e.counters["unknown_verdicts"] == 1


def test_word_invariant_separates_dim1():
    c = graph_computad(["a"], [("f", "a", "a"), ("g", "a", "a")],
                       Bounds(size=2))
    fa = free_algebra(c, Bounds(size=2))
    e = fa.engines[1]
    f, g = Gen("f", 1), Gen("g", 1)
    verdict, why = equal_cells(e, Comp(0, f, g), Comp(0, g, f))
    assert verdict == DISTINCT and "word" in why


def test_dimension_mismatch_rejected():
    fa = free_algebra(scalar_computad(["al"]), Bounds(size=2))
    with pytest.raises(FreecatError):
        equal_cells(fa.engines[2], Gen("al", 2), Id(Gen("p", 0)))


# --- enumeration ------------------------------------------------------------------


def test_enumerate_loop_lengths():
    c = graph_computad(["a"], [("f", "a", "a")], Bounds(size=3))
    fa = free_algebra(c, Bounds(size=3))
    rows, groups = fa.enumerate_cells(1)
    assert len(rows) == 4
    assert groups == {(): 1, ("f",): 1, ("f", "f"): 1, ("f", "f", "f"): 1}


def test_enumerate_scalar_pairs():
    fa = free_algebra(scalar_computad(["al", "be"]), Bounds(size=2))
    rows, _ = fa.enumerate_cells(2)
    assert len(rows) == 6


def test_enumerate_no_generators():
    fa = free_algebra(theta_computad(3), Bounds(size=2))
    for r in range(4):
        rows, _ = fa.enumerate_cells(r)
        assert len(rows) == 1


def test_generate_terms_is_closed_within_rounds():
    from computadlab.freecat import Engine
    fa1 = free_algebra(theta_computad(1), Bounds(size=3))
    e = Engine(2, fa1.levels, [("al", 0, 0), ("be", 0, 0)], Bounds(size=3))
    terms = generate_terms(e, rounds=2)
    assert any(isinstance(t, Comp) for t in terms)
    assert all(term_dim(t) == 2 for t in terms)


# --- soundness and monotonicity ----------------------------------------------------


def test_soundness_counters_stay_clean():
    for mk in (lambda: free_algebra(scalar_computad(["al", "be"]), Bounds(size=3)),
               lambda: free_algebra(theta_computad(4), Bounds(size=3))):
        fa = mk()
        report = fa.soundness_report()
        assert report["multiset_violations"] == 0
        assert report["boundary_violations"] == 0
        assert report["word_violations"] == 0
        assert report["split_violations"] == 0
        assert report["axiom_instances"] > 0


def test_monotonicity_partition_only_coarsens():
    from computadlab.freecat import Engine
    fa1 = free_algebra(theta_computad(1), Bounds(size=3))
    e = Engine(2, fa1.levels, [("al", 0, 0), ("be", 0, 0)], Bounds(size=3))
    previous = None
    for _ in range(6):
        e.extend_composites()
        e.saturation_round()
        part = {t: e.find(t) for t in range(len(e.nodes))}
        if previous is not None:
            merged = {}
            for t, old_root in previous.items():
                assert merged.setdefault(old_root, part[t]) == part[t]
        previous = part
    assert e.counters["split_violations"] == 0


def test_dim1_completeness_random_graphs():
    rng = random.Random(20250809)
    for _ in range(20):
        vertices, edges = random_graph(rng)
        c = graph_computad(vertices, edges, Bounds(size=3))
        fa = free_algebra(c, Bounds(size=3))
        rows, _ = fa.enumerate_cells(1)
        got = set()
        for rep, _ in rows:
            word = decode_word(rep)
            lv = fa.levels[1]
            cls = fa.class_of_term(term_from_str(rep, {v: 0 for v in vertices}
                                                 | {n: 1 for n, _, _ in edges}))
            start = fa.levels[0].reps[lv.src[cls]][4:-1]
            got.add((start, word))
        oracle = set(dfs_paths(vertices, edges, 3))
        assert got == oracle


def test_dim2_classes_match_pasting_diagram_oracle():
    """Engine cells of the free 2-category on {p; e: p->p; u,v: e => e}
    agree with the decorated-tree count: a 2-cell is a horizontal row of
    vertical stacks of 2-cells over e-columns, so both routes (and a
    closed form) must give the same number."""
    from computadlab.globular import make_globular
    from computadlab.pasting import pasting_cells

    e = Gen("e", 1)
    c = build_computad([["p"], [("e", Gen("p", 0), Gen("p", 0))],
                        [("u", e, e), ("v", e, e)]], Bounds(size=3))
    fa = free_algebra(c, Bounds(size=3))
    rows, _ = fa.enumerate_cells(2)

    x = make_globular(2, [["p"], ["e"], ["u", "v"]],
                      [{}, {"e": "p"}, {"u": "e", "v": "e"}],
                      [{}, {"e": "p"}, {"u": "e", "v": "e"}])
    diagrams = [dt for dt in pasting_cells(x, 2, 3)
                if sum(1 for path, _ in dt.labels if len(path) == 2) <= 3]

    import itertools
    closed_form = sum(
        2 ** sum(js)
        for m in range(4)
        for js in itertools.product(range(4), repeat=m)
        if sum(js) <= 3)
    assert len(rows) == len(diagrams) == closed_form == 176


def test_partiality_marker_reflects_size_cut():
    c = graph_computad(["a"], [("f", "a", "a")], Bounds(size=2))
    fa = free_algebra(c, Bounds(size=2))
    assert fa.partial  # f.f.f exists beyond the bound
    assert "partial" in fa.partiality_marker()
    fa_free = free_algebra(theta_computad(2), Bounds(size=2))
    assert not fa_free.partial
