import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from birkhoff_rigidity.birkhoff import Verdict, is_birkhoff_orthogonal
from birkhoff_rigidity.corpus import connected_kernel_model
from birkhoff_rigidity.function_space import (
    FunctionSpaceModel,
    ModelError,
    PhaseSpace,
    disjoint_sum,
    hilbert_from_kernel_matrix,
    lipschitz_space,
    model_from_norm_only,
    rkhs_from_kernel,
)
from birkhoff_rigidity.graph import (
    BirkhoffGraph,
    DisjointSet,
    NullEvaluationError,
    PairMargin,
    build_graph,
    connected_components,
    export_dot,
    neighborhood_openness_probe,
)
from birkhoff_rigidity.norms import HilbertGram, Lp, Polyhedral

TOL = 1e-7


def _graph(vertices, edges):
    V = tuple(vertices)
    margins = {}
    for i, x in enumerate(V):
        for y in V[i + 1:]:
            on = frozenset((x, y)) in edges
            v = Verdict.NOT_ORTHOGONAL if on else Verdict.ORTHOGONAL
            margins[frozenset((x, y))] = PairMargin(0.5 if on else 0.0, 0.0, v, Verdict.ORTHOGONAL)
    return BirkhoffGraph(V, frozenset(edges), (), margins, TOL)


def test_orthogonal_evaluations_give_no_edge():
    g = build_graph(model_from_norm_only(HilbertGram(np.eye(2))))
    assert not g.edges
    assert g.components == ((0,), (1,))


def test_correlated_evaluations_give_an_edge():
    g = build_graph(hilbert_from_kernel_matrix([[1, 0.5], [0.5, 1]]))
    assert g.edges == {frozenset((0, 1))}
    assert g.is_connected


def test_disjoint_sum_two_components(rng):
    F = connected_kernel_model(rng, 4)
    E = connected_kernel_model(rng, 3)
    g = build_graph(disjoint_sum(F, E))
    assert len(g.components) == 2
    assert {v[0] for v in g.components[0]} == {"X"}
    assert {v[0] for v in g.components[1]} == {"Y"}
    dot = export_dot(g)
    assert dot.count("fillcolor=lightblue") == 4
    assert dot.count("fillcolor=lightpink") == 3
    assert '"X:0"' in dot


def test_connected_components_examples():
    assert connected_components(_graph("abc", set())) == [["a"], ["b"], ["c"]]
    path = {frozenset("ab"), frozenset("bc"), frozenset("cd")}
    assert connected_components(_graph("abcd", path)) == [list("abcd")]


def test_disjoint_set():
    ds = DisjointSet(5)
    assert ds.union(3, 1)
    assert not ds.union(1, 3)
    ds.union(4, 0)
    assert ds.groups() == [[0, 4], [1, 3], [2]]


def test_null_evaluations_refused():
    with pytest.warns(UserWarning):
        F = rkhs_from_kernel([0, 0.5, 0.5j, -0.5, 0.9], N=2)
    with pytest.raises(NullEvaluationError):
        build_graph(F)
    g = build_graph(F.restrict(F.nonnull_points()))
    assert 0 not in g.vertices


def test_export_dot_examples():
    dot = export_dot(build_graph(model_from_norm_only(HilbertGram(np.eye(2)))))
    assert dot.count("--") == 0 and dot.count("label=") == 2
    dot = export_dot(build_graph(hilbert_from_kernel_matrix([[1, 0.5], [0.5, 1]])))
    assert dot.count("--") == 1


def test_hilbert_specialization(rng):
    checked = 0
    for _ in range(50):
        m = int(rng.integers(2, 6))
        k = int(rng.integers(m, m + 3))
        B = rng.normal(size=(m, k)) + 1j * rng.normal(size=(m, k))
        if rng.uniform() < 0.5:
            B[0] = 0
            B[0, 0] = 1
            B[1:, 0] = 0  # point 0 orthogonal to the rest when G is diagonal
        G = np.diag(rng.uniform(0.5, 2, k)).astype(complex)
        if rng.uniform() < 0.5:
            G = oracles.random_gram(rng, k)
        F = FunctionSpaceModel(PhaseSpace(tuple(range(m))), B, HilbertGram(G), check_rank=False)
        g = build_graph(F, TOL)
        W = np.linalg.inv(G).conj()  # Gram of the dual view
        for i in range(m):
            for j in range(i + 1, m):
                ip = abs(oracles.hilbert_inner(W, B[i], B[j]))
                rel = ip / (oracles.gram_norm(W, B[i]) * oracles.gram_norm(W, B[j]))
                if 1e-6 < rel < 1e-2:
                    continue
                assert g.adjacent(i, j) == (rel >= 1e-2)
                checked += 1
    assert checked > 50


def test_edge_symmetry_and_partition(rng):
    for _ in range(5):
        F = connected_kernel_model(rng, 5, spread=2.0)
        g = build_graph(F)
        for x in g.vertices:
            for y in g.vertices:
                assert g.adjacent(x, y) == g.adjacent(y, x)
        flat = [v for c in g.components for v in c]
        assert sorted(flat) == sorted(g.vertices)
        assert [list(c) for c in g.components] == connected_components(g)


@given(st.integers(0, 2**31), st.floats(0.01, 100))
def test_scaling_invariance(seed, lam):
    r = np.random.default_rng(seed)
    m = 4
    B = r.normal(size=(m, 3))
    B[r.uniform(size=B.shape) < 0.4] = 0
    B[np.arange(m), r.integers(0, 3, m)] += 1.0
    norm = Polyhedral.linf(3) if r.uniform() < 0.5 else Polyhedral.l1(3)
    ph = PhaseSpace(tuple(range(m)))
    F = FunctionSpaceModel(ph, B, norm, check_rank=False)
    G = FunctionSpaceModel(ph, lam * B, norm, check_rank=False)
    g1, g2 = build_graph(F), build_graph(G)
    assert g1.edges == g2.edges
    assert g1.components == g2.components


def test_graph_matches_pairwise_tests(rng):
    # the batched kernel path agrees with the one-pair-at-a-time API
    B = rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))
    F = FunctionSpaceModel(PhaseSpace(tuple(range(5))), B, Lp(3, 3))
    g = build_graph(F)
    view = F.dual_view()
    for i in range(5):
        for j in range(i + 1, 5):
            a = is_birkhoff_orthogonal(view, B[i], B[j])
            b = is_birkhoff_orthogonal(view, B[j], B[i])
            xy, yx = g.margin(i, j)
            assert g.margins[frozenset((i, j))].verdict_xy is not Verdict.INDETERMINATE
            assert (xy <= TOL) == a and (yx <= TOL) == b
            assert g.adjacent(i, j) == (not (a and b))


def test_lipschitz_graph_uses_python_path():
    D = np.array([[0, 0.5, 0.7], [0.5, 0, 0.4], [0.7, 0.4, 0]])
    g = build_graph(lipschitz_space(D))
    assert g.is_connected


def test_openness_probe(rng):
    F = connected_kernel_model(rng, 6)
    p = neighborhood_openness_probe(F, 0, radius=0.5)
    assert p.passed
    big = neighborhood_openness_probe(F, 0, radius=1e6)
    assert len(big.near_points) == F.m - 1
    with pytest.raises(ModelError):
        neighborhood_openness_probe(model_from_norm_only(Lp(2, 2)), 0, 1.0)
    Fs = connected_kernel_model(rng, 3)
    H = disjoint_sum(F, Fs, gap=100.0)
    q = neighborhood_openness_probe(H, ("X", 0), radius=50.0)
    assert q.passed and all(v[0] == "X" for v in q.near_points)


def test_json_dump(rng):
    F = disjoint_sum(connected_kernel_model(rng, 3), connected_kernel_model(rng, 2))
    g = build_graph(F)
    doc = json.loads(g.dumps())
    assert doc["vertices"][0] == ["X", 0]
    assert len(doc["margins"]) == 10
    assert len(doc["components"]) == 2
    assert doc == json.loads(build_graph(F).dumps())


def test_soft_edges():
    m = PairMargin(5e-7, 0.0, Verdict.INDETERMINATE, Verdict.ORTHOGONAL)
    assert m.edge and m.soft
    m = PairMargin(0.3, 5e-7, Verdict.NOT_ORTHOGONAL, Verdict.INDETERMINATE)
    assert m.edge and not m.soft
    m = PairMargin(0.0, 0.0, Verdict.ORTHOGONAL, Verdict.ORTHOGONAL)
    assert not m.edge
