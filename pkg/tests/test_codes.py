import itertools
import json
from fractions import Fraction

import pytest

from oracles import fixtures, naive_is_code
from sickit.codes import (
    DET_IC,
    ERR_IC,
    IC,
    PRESETS,
    RED_IC,
    SIC,
    Candidates,
    CodeSpec,
    Combiner,
    Inconsistent,
    Located,
    UnderDominated,
    Undistinguished,
    admits_ic,
    admits_sic,
    code_spec,
    diff_counts,
    dom,
    domination_histogram,
    is_code,
    locate,
    share,
    twin_scan,
    verify_code,
    verify_sic_definition,
    violations_jsonl,
)
from sickit.generators import cartesian_product, complete, cycle, hypercube, path, petersen
from sickit.graph import GraphError, VertexSet, build_graph
from sickit.solver import solve_min

C4 = cycle(4)
ALL4 = VertexSet.full(4)
SPECS = {"IC": IC, "SIC": SIC, "RED:IC": RED_IC, "DET:IC": DET_IC, "ERR:IC": ERR_IC}


def small_fixtures(limit):
    return [(name, n, e) for name, n, e in fixtures() if n <= limit]


def test_presets():
    assert (IC.dom_threshold, IC.combiner, IC.dist_threshold) == (1, Combiner.SUM, 1)
    assert (SIC.dom_threshold, SIC.combiner, SIC.dist_threshold) == (1, Combiner.MIN, 1)
    assert (RED_IC.dom_threshold, RED_IC.combiner, RED_IC.dist_threshold) == (2, Combiner.SUM, 2)
    assert (DET_IC.dom_threshold, DET_IC.combiner, DET_IC.dist_threshold) == (2, Combiner.MAX, 2)
    assert (ERR_IC.dom_threshold, ERR_IC.combiner, ERR_IC.dist_threshold) == (3, Combiner.SUM, 3)
    assert code_spec("RED:IC") is RED_IC and code_spec("sic") is SIC and code_spec("det_ic") is DET_IC
    with pytest.raises(ValueError):
        code_spec("foo")
    with pytest.raises(ValueError):
        CodeSpec(0, Combiner.SUM, 1)


def test_dom_examples():
    assert dom(C4, ALL4, 0) == 3
    assert dom(C4, [0, 2], 1) == 2
    assert dom(C4, [], 2) == 0
    with pytest.raises(GraphError):
        dom(C4, ALL4, 4)


def test_diff_counts_examples():
    assert diff_counts(C4, ALL4, 0, 1) == (1, 1)
    assert diff_counts(C4, ALL4, 0, 2) == (1, 1)
    assert diff_counts(C4, [], 0, 1) == (0, 0)
    assert diff_counts(C4, [0, 1], 3, 1) == tuple(reversed(diff_counts(C4, [0, 1], 1, 3)))
    with pytest.raises(GraphError):
        diff_counts(C4, ALL4, 1, 1)


def test_verify_examples():
    assert verify_code(C4, ALL4, SIC) == []
    p3 = path(3)
    viol = verify_code(p3, VertexSet.full(3), SIC)
    assert Undistinguished(0, 1, 0, 1) in viol
    assert all(min(v.left_count, v.right_count) == 0 for v in viol)
    res = solve_min(petersen(), SIC)
    assert verify_code(petersen(), res.witness, SIC) == []


def test_verify_reports_underdomination_first():
    viol = verify_code(C4, [0], RED_IC)
    assert isinstance(viol[0], UnderDominated)
    assert viol[0] == UnderDominated(0, 1)
    assert len(verify_code(C4, [0], RED_IC, fail_fast=True)) == 1


def test_violation_counts_recomputable():
    g = petersen()
    S = [0, 1, 5]
    for v in verify_code(g, S, ERR_IC):
        if isinstance(v, UnderDominated):
            assert dom(g, S, v.v) == v.dom_value
        else:
            assert diff_counts(g, S, v.u, v.v) == (v.left_count, v.right_count)
            assert v.u < v.v


def test_violations_jsonl():
    text = violations_jsonl(verify_code(path(3), [0, 1, 2], SIC))
    rows = [json.loads(line) for line in text.splitlines()]
    assert rows[0] == {"kind": "Undistinguished", "vertices": [0, 1], "counts": [0, 1]}
    assert set(rows[0]) == {"kind", "vertices", "counts"}


def test_sic_definition_examples():
    assert verify_sic_definition(C4, ALL4) == (True, None)
    ok, witness = verify_sic_definition(C4, [0, 1, 2])
    assert not ok and witness is not None
    ok, witness = verify_sic_definition(C4, [])
    assert not ok and witness == 0


def test_sic_definition_matches_table_form():
    """Every subset of every fixture (all have n <= 9)."""
    total = 0
    for _, n, edges in fixtures():
        g = build_graph(n, edges)
        for mask in range(1 << n):
            assert verify_sic_definition(g, mask)[0] == is_code(g, mask, SIC)
            total += 1
    assert total == sum(1 << n for _, n, _ in fixtures())


@pytest.mark.parametrize("name", list(SPECS))
def test_verifier_matches_naive(name):
    for _, n, edges in small_fixtures(6):
        g = build_graph(n, edges)
        for k in range(n + 1):
            for S in itertools.combinations(range(n), k):
                assert is_code(g, S, SPECS[name]) == naive_is_code(n, edges, S, name)


def test_locate_examples():
    assert locate(C4, ALL4, [3, 0, 1]) == Located(0)
    assert locate(C4, ALL4, [0]) == Inconsistent()
    assert locate(path(3), [0, 1, 2], [0, 1]) == Located(0)
    with pytest.raises(GraphError):
        locate(C4, [0, 1], [2])
    with pytest.raises(GraphError):
        locate(C4, ALL4, [])


def test_locate_petersen_every_vertex():
    g = petersen()
    S = solve_min(g, SIC).witness
    for x in range(10):
        alarms = VertexSet(10, g.closed[x] & S.mask)
        assert locate(g, S, alarms) == Located(x)


def test_locate_ambiguous():
    # on P3 with only the centre as detector, every vertex raises the same alarm
    g = path(3)
    assert locate(g, [1], [1]) == Candidates((0, 1, 2))


def test_twin_scan_examples():
    rep = twin_scan(path(3))
    assert (0, 1) in rep.semi_closed_twins
    assert not admits_sic(path(3))
    assert admits_sic(C4) and not twin_scan(C4).semi_closed_twins
    rep = twin_scan(complete(3))
    assert rep.closed_twins == [(0, 1), (0, 2), (1, 2)]
    assert set(rep.closed_twins) <= set(rep.semi_closed_twins)
    assert set(rep.open_twins) <= set(rep.semi_open_twins)


def test_twin_scan_open_twins():
    rep = twin_scan(C4)
    assert (0, 2) in rep.open_twins and (1, 3) in rep.open_twins


def _all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield build_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def test_connected_graphs_up_to_three_have_no_sic():
    for n in (2, 3):
        for g in _all_graphs(n):
            if g.is_connected():
                assert not admits_sic(g)


def test_admits_sic_implies_admits_ic():
    for g in _all_graphs(5):
        if admits_sic(g):
            assert admits_ic(g)


def test_share_examples():
    assert all(share(C4, ALL4, v) == 1 for v in range(4))
    g = cartesian_product(cycle(6), path(2))
    S = solve_min(g, SIC).witness
    assert len(S) == 8
    assert all(share(g, S, v) <= Fraction(3, 2) for v in S)
    assert sum(share(g, S, v) for v in S) == g.n
    with pytest.raises(GraphError):
        share(C4, [0, 1], 2)
    assert share(path(3), [0, 1, 2], 1) == Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 2)


def test_share_sum_identity_all_dominating_sets():
    for _, n, edges in small_fixtures(7):
        g = build_graph(n, edges)
        for mask in range(1, 1 << n):
            if all(c & mask for c in g.closed):
                assert sum(share(g, mask, v) for v in VertexSet(n, mask)) == n


def test_domination_histogram():
    assert domination_histogram(C4, ALL4) == {3: 4}
    assert domination_histogram(C4, [0]) == {0: 1, 1: 3}


@pytest.mark.parametrize("fixture", [f for f in fixtures() if f[1] <= 8], ids=lambda f: f[0])
def test_structural_properties_of_every_sic(fixture):
    _, n, edges = fixture
    g = build_graph(n, edges)
    connected = g.is_connected() and n >= 2
    for mask in range(1 << n):
        if not is_code(g, mask, SIC):
            continue
        doms = [(c & mask).bit_count() for c in g.closed]
        if connected:
            assert min(doms) >= 2
            assert is_code(g, mask, RED_IC)
        for v in VertexSet(n, mask):
            if g.degree(v):
                assert doms[v] >= 3


def test_removing_a_detector_never_repairs():
    g = petersen()
    for spec in SPECS.values():
        for S in itertools.combinations(range(10), 6):
            base = {(type(v), v.v) if isinstance(v, UnderDominated) else (type(v), v.u, v.v)
                    for v in verify_code(g, S, spec)}
            smaller = {(type(v), v.v) if isinstance(v, UnderDominated) else (type(v), v.u, v.v)
                       for v in verify_code(g, S[1:], spec)}
            assert base <= smaller


def test_regular_graphs_sic_iff_ic():
    regular = [cycle(n) for n in range(3, 10)] + [complete(n) for n in range(2, 6)]
    regular += [hypercube(d) for d in range(1, 5)] + [petersen()]
    regular += [g for g in _all_graphs(5) if g.is_regular()]
    for g in regular:
        assert admits_sic(g) == admits_ic(g)
        if admits_ic(g):
            assert is_code(g, VertexSet.full(g.n), SIC)


def test_presets_dict_has_five():
    assert set(PRESETS.values()) == set(SPECS.values())
