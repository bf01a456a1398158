import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from birkhoff_rigidity.corpus import connected_kernel_model, unimodular
from birkhoff_rigidity.function_space import (
    FunctionSpaceModel,
    ModelError,
    PhaseSpace,
    disjoint_sum,
    hilbert_from_kernel_matrix,
    model_from_norm_only,
    rkhs_from_kernel,
    sup_norm_space,
)
from birkhoff_rigidity.birkhoff import Verdict
from birkhoff_rigidity.graph import BirkhoffGraph, PairMargin, build_graph
from birkhoff_rigidity.norms import HilbertGram, Lp, Polyhedral
from birkhoff_rigidity.rigidity import (
    EigenvalueMismatchError,
    ModeMismatch,
    NonScalarWitness,
    NotAMultiplierError,
    NotIsometricError,
    Scalar,
    VacuousCoreError,
    detect_mo,
    invariant_core,
    is_isometry,
    is_phase_permutation,
    isometry_rigidity,
    mo_from_weight,
    propagate_eigenvalues,
    range_powers,
    rigidity_from_operator,
    rigidity_verdict,
    subspace_contained,
    wco_compare,
)


def _affine():
    z = np.array([0, 1, 2], dtype=complex)
    phase = PhaseSpace((0, 1, 2), z)
    return FunctionSpaceModel(phase, np.stack([np.ones(3), z], axis=1), HilbertGram(np.eye(2)))


def _delta(m=2, norm=None):
    return model_from_norm_only(norm if norm is not None else HilbertGram(np.eye(m)))


# ------------------------------------------------------------ detect_mo / mo_from_weight


def test_detect_mo_examples():
    d = detect_mo(_delta(), np.diag([2, 3j]))
    assert d.is_mo and np.array_equal(d.omega, [2, 3j])
    d = detect_mo(_delta(), [[1, 1], [0, 1]])
    # the first evaluation (1, 0) is sent to (1, 1)
    assert not d.is_mo and d.failing_point == 0
    d = detect_mo(_affine(), 5 * np.eye(2))
    assert np.allclose(d.omega, 5, atol=0)


def test_mo_from_weight_examples(rng):
    w = rng.normal(size=3) + 1j * rng.normal(size=3)
    assert np.allclose(mo_from_weight(_delta(3), w), np.diag(w), atol=1e-14)
    F = _affine()
    assert mo_from_weight(F, F.phase.coords) is None
    T = mo_from_weight(F, np.full(3, 2 - 1j))
    assert np.allclose(T, (2 - 1j) * np.eye(2), atol=1e-14)


@given(st.integers(0, 2**31), st.integers(1, 6))
def test_detect_inverts_mo_from_weight(seed, m):
    r = np.random.default_rng(seed)
    F = _delta(m, Lp(r.choice([1.0, 2.0, np.inf]), m))
    w = r.normal(size=m) + 1j * r.normal(size=m)
    det = detect_mo(F, mo_from_weight(F, w))
    assert det.is_mo
    assert np.array_equal(det.omega, w)


def test_detect_skips_null_points():
    with pytest.warns(UserWarning):
        F = rkhs_from_kernel([0, 0.5, -0.5j, -0.7], N=2)
    det = detect_mo(F, 1j * np.eye(3))
    assert det.is_mo and np.isnan(det.omega[0])
    assert np.allclose(det.omega[1:], 1j)


# ------------------------------------------------------------ is_isometry


def test_is_isometry_examples(rng):
    F = _delta(3)
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    ev = is_isometry(F, Q, "exact_hilbert")
    assert ev.kind == "exact" and ev.unitary
    ev = is_isometry(F, 2 * np.eye(3))
    assert not ev.isometric and ev.deviation == pytest.approx(3.0)  # |4 - 1| relative to G
    ev = is_isometry(_delta(3, Lp(np.inf, 3)), 2 * np.eye(3), "sampled")
    assert ev.deviation == pytest.approx(1.0)
    T = np.array([[0, -1, 0], [0, 0, 1j], [np.exp(0.4j), 0, 0]])
    ev = is_isometry(_delta(3, Lp(np.inf, 3)), T, "sampled", samples=500)
    assert ev.isometric and ev.deviation <= 1e-12 and ev.samples >= 500
    assert is_isometry(_delta(3, Lp(np.inf, 3)), T).kind == "structural"


def test_is_isometry_modes():
    with pytest.raises(ModeMismatch):
        is_isometry(_delta(2, Lp(np.inf, 2)), np.eye(2), "exact_hilbert")
    with pytest.raises(ModeMismatch):
        is_isometry(_delta(2), np.eye(2), "bogus")
    # real permutations preserve polyhedral l-infinity; complex phases are not real maps
    F = _delta(2, Polyhedral.linf(2))
    assert is_isometry(F, [[0, -1], [1, 0]]).kind == "structural"
    ev = is_isometry(_delta(2), np.diag([1, 1e-10]))
    assert not ev.invertible


def test_is_phase_permutation():
    assert is_phase_permutation([[0, 1j], [-1, 0]])
    assert not is_phase_permutation([[0, 2], [1, 0]])
    assert not is_phase_permutation([[1, 1], [0, 1]])


# ------------------------------------------------------------ propagation


def test_propagate_examples():
    g = build_graph(hilbert_from_kernel_matrix([[1, 0.5], [0.5, 1]]))
    p = propagate_eigenvalues(g, [3j, 3j])
    assert isinstance(p.verdict, Scalar) and p.verdict.lam == pytest.approx(1j)
    p = propagate_eigenvalues(g, [3j, 3j], unimodular=False)
    assert p.verdict.lam == 3j
    g2 = build_graph(_delta(2))
    p = propagate_eigenvalues(g2, [1, -1])
    assert isinstance(p.verdict, NonScalarWitness)
    assert p.verdict.values == (1, -1)
    with pytest.raises(EigenvalueMismatchError) as exc:
        propagate_eigenvalues(g, [1, -1])
    assert exc.value.edge == (0, 1) and "hard" in str(exc.value)


def test_two_point_unitary_forces_equal_weights():
    F = hilbert_from_kernel_matrix([[1, 0.5], [0.5, 1]])
    for t in np.linspace(0.1, 2 * math.pi - 0.1, 12):
        ev = is_isometry(F, np.diag([1, cmath.exp(1j * t)]))
        assert not ev.isometric
    r = rigidity_verdict(F, [cmath.exp(0.7j)] * 2)
    assert r.verdict.lam == pytest.approx(cmath.exp(0.7j))


# ------------------------------------------------------------ rigidity_verdict


def test_rigidity_constant_weight(rng):
    F = connected_kernel_model(rng, 5)
    c = cmath.exp(1j * math.pi / 3)
    r = rigidity_verdict(F, np.full(5, c))
    assert isinstance(r.verdict, Scalar)
    assert r.verdict.lam == pytest.approx(c, abs=1e-12)
    assert r.isometry.kind == "exact"


def test_rigidity_disjoint_sum(rng):
    H = disjoint_sum(connected_kernel_model(rng, 3), connected_kernel_model(rng, 3))
    r = rigidity_verdict(H, [1, 1, 1, -1, -1, -1])
    assert isinstance(r.verdict, NonScalarWitness)
    assert len(r.components) == 2
    doc = json.loads(json.dumps(r.to_json()))
    assert doc["verdict"]["kind"] == "NonScalarWitness"
    assert "NonScalarWitness" in r.table()


def test_rigidity_sup_norm(rng):
    z = np.exp(2j * np.pi * np.arange(6) / 6)
    F = sup_norm_space(PhaseSpace.from_coords(z, epsilon=1.1))
    assert F.phase.is_connected()
    r = rigidity_verdict(F, unimodular(rng, 6))
    assert isinstance(r.verdict, NonScalarWitness)
    assert len(r.components) == 6


def test_rigidity_errors(rng):
    with pytest.raises(NotAMultiplierError):
        rigidity_verdict(_affine(), [0, 1, 2])
    F = connected_kernel_model(rng, 4)
    with pytest.raises(NotIsometricError):
        rigidity_verdict(F, [1, 1j, -1, 1])
    with pytest.raises(NotIsometricError):
        rigidity_verdict(F, [2, 2, 2, 2])
    with pytest.raises(NotAMultiplierError):
        rigidity_from_operator(_delta(2), [[1, 1], [0, 1]])
    with pytest.raises(ModelError):
        rigidity_verdict(F, [1, 1])


def test_rigidity_from_operator(rng):
    F = connected_kernel_model(rng, 4)
    r = rigidity_from_operator(F, -1j * np.eye(4))
    assert r.verdict.lam == pytest.approx(-1j)


def test_rigidity_soft_edge_is_named():
    # a spurious edge between points with different weights must be loud
    H = disjoint_sum(_delta(1), _delta(1))
    g = build_graph(H)
    key = frozenset(g.vertices)
    fake = BirkhoffGraph(g.vertices, frozenset([key]), (g.vertices,),
                         {key: PairMargin(3e-7, 0.0, Verdict.INDETERMINATE, Verdict.ORTHOGONAL)},
                         g.tol)
    with pytest.raises(EigenvalueMismatchError, match="soft"):
        rigidity_verdict(H, [1, -1], graph=fake)


# ------------------------------------------------------------ weighted composition


def _identity_phi(F):
    return {x: x for x in F.ids}


def test_wco_examples(rng):
    F = connected_kernel_model(rng, 4)
    w = unimodular(rng, 4)
    assert wco_compare(F, F, _identity_phi(F), w, w, np.eye(4)).lam == pytest.approx(1)
    th = 0.9
    c = wco_compare(F, F, _identity_phi(F), w, cmath.exp(1j * th) * w,
                    cmath.exp(-1j * th) * np.eye(4))
    assert c.lam == pytest.approx(cmath.exp(1j * th))
    assert c.unimodular and c.isometry.unitary
    d = np.array([1, 1, 1j, 1j])
    with pytest.raises(EigenvalueMismatchError):
        wco_compare(F, F, _identity_phi(F), w, d * w, np.diag(1 / d))
    with pytest.raises(ModelError):
        wco_compare(F, F, _identity_phi(F), w, w, 2 * np.eye(4))
    with pytest.raises(ModelError):
        wco_compare(F, F, _identity_phi(F), w, np.zeros(4), np.eye(4))


def test_wco_random_phases(rng):
    for _ in range(50):
        F = connected_kernel_model(rng, int(rng.integers(2, 5)))
        lam = cmath.exp(2j * math.pi * rng.uniform())
        w = unimodular(rng, F.m)
        c = wco_compare(F, F, _identity_phi(F), w, lam * w, np.conj(lam) * np.eye(F.k))
        assert c.lam == pytest.approx(lam, abs=1e-9)


def test_wco_nontrivial_symbol(rng):
    # E samples a subset of F's points; phi sends each E point to the same point of F
    F = connected_kernel_model(rng, 5)
    E = F.restrict(F.ids[:3])
    phi = {y: y for y in E.ids}
    w = unimodular(rng, 3)
    c = wco_compare(F, E, phi, w, -w, -np.eye(5))
    assert c.lam == pytest.approx(-1)


# ------------------------------------------------------------ invariant core


def test_core_examples(rng):
    M = rng.normal(size=(4, 4))
    core = invariant_core(None, M)
    assert core.dimension == 4 and core.n_star == 1
    N = np.triu(rng.normal(size=(3, 3)), 1)
    assert invariant_core(None, N).dimension == 0
    S = np.diag(np.full(3, 2.0), -1)  # e_n -> 2 e_{n+1}, e_3 -> 0
    core = invariant_core(None, S)
    assert core.dimension == 0
    assert core.dimensions[:4] == (3, 2, 1, 0)


def test_core_monotone(rng):
    for _ in range(20):
        k = int(rng.integers(2, 7))
        r = int(rng.integers(0, k + 1))
        M = rng.normal(size=(k, r)) @ rng.normal(size=(r, k))
        if rng.uniform() < 0.5:
            M = M + np.triu(rng.normal(size=(k, k)), 1)
        Rs = range_powers(M, k + 1)
        for a, b in zip(Rs[1:], Rs):
            assert subspace_contained(a, b)
        assert Rs[k - 1].shape[1] == Rs[k].shape[1]
        assert invariant_core(None, M).dimension == Rs[k].shape[1]


def test_isometry_rigidity(rng):
    F = connected_kernel_model(rng, 4)
    c = cmath.exp(0.2j)
    r = isometry_rigidity(F, np.full(4, c))
    assert r.core_dimension == 4 and r.verdict.lam == pytest.approx(c)
    R = rkhs_from_kernel([0.3, 0.5j, -0.8, 0.6 + 0.2j], N=3)
    S = np.diag(np.full(3, 2.0), -1)
    with pytest.raises(VacuousCoreError):
        isometry_rigidity(R, np.ones(4), M=S)
