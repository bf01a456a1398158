import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from birkhoff_rigidity.norms import (
    ApproximateOnlyError,
    BlockSum,
    DimensionMismatch,
    HilbertGram,
    LipschitzFin,
    Lp,
    NormError,
    OuterLp,
    Polyhedral,
    complex_matrix_from_json,
    complex_matrix_to_json,
    complex_vector_from_json,
    dil,
    dual_norm_eval,
    face_dimension,
    norm_eval,
    norm_from_json,
    sphere_face_dimension,
    support_face,
    validate_metric,
)


def _specs(rng):
    d = 3
    G = oracles.random_gram(rng, d)
    D = oracles.random_metric(rng, 4)
    return [
        Lp(1, d), Lp(1.5, d), Lp(2, d), Lp(3, d), Lp(np.inf, d),
        HilbertGram(G),
        Polyhedral.linf(d), Polyhedral.l1(d),
        LipschitzFin(D, 0, True), LipschitzFin(D, 1, False),
        BlockSum([Lp(np.inf, 2), HilbertGram(oracles.random_gram(rng, 2))], OuterLp(2)),
        BlockSum([Lp(1, 2), Lp(3, 1)], OuterLp(1.5, (1.0, 2.0))),
    ]


def _rand(rng, spec):
    v = rng.normal(size=spec.dim)
    if spec.field == "complex":
        v = v + 1j * rng.normal(size=spec.dim)
    return v


# ------------------------------------------------------------ examples


def test_euclidean_example():
    assert norm_eval(Lp(2, 2), [3, 4]) == pytest.approx(5.0, abs=1e-15)


def test_lipschitz_single_pair():
    spec = LipschitzFin([[0, 1], [1, 0]], basepoint=0, penalize_basepoint=True)
    assert norm_eval(spec, [0, 3]) == pytest.approx(3.0)


def test_block_sum_example():
    spec = BlockSum([Lp(np.inf, 2), Lp(np.inf, 2)], OuterLp(2))
    assert norm_eval(spec, [1, 1, 0, 0]) == pytest.approx(1.0)


def test_dil_examples():
    D3 = np.ones((3, 3)) - np.eye(3)
    assert dil(D3, [2, 2, 2]) == 0.0
    assert dil([[0, 2], [2, 0]], [0, 3]) == pytest.approx(1.5)
    assert dil(D3, [0, 1, 5]) == pytest.approx(oracles.dil(D3, [0, 1, 5])) == pytest.approx(5.0)


def test_dual_norm_examples():
    assert dual_norm_eval(Lp(np.inf, 2), [1, 2]) == pytest.approx(3.0)
    assert dual_norm_eval(HilbertGram(np.diag([4.0, 1.0])), [1, 0]) == pytest.approx(0.5)
    D = np.array([[0, 2.0], [2.0, 0]])
    spec = LipschitzFin(D, basepoint=0, penalize_basepoint=True)
    assert dual_norm_eval(spec, [0, 1]) == pytest.approx(max(1.0, 2.0), abs=1e-9)


def test_support_face_examples():
    face = support_face(Lp(2, 2), [1, 0])
    assert len(face.functionals) == 1
    assert np.allclose(face.functionals[0], [1, 0])
    face = support_face(Polyhedral.linf(2), [1, 1])
    got = sorted(tuple(np.round(np.real(v), 12)) for v in face.functionals)
    want = sorted(tuple(v) for v in oracles.linf_norming_vertices([1, 1]))
    assert got == want == [(0.0, 1.0), (1.0, 0.0)]
    face = support_face(Polyhedral.linf(2), [1, 0])
    assert [tuple(np.real(v)) for v in face.functionals] == [(1.0, 0.0)]


def test_face_dimension_examples():
    assert face_dimension(Lp(2, 2), [0.3, -2]) == 0
    assert face_dimension(Polyhedral.linf(2), [1, 1]) == 1
    assert face_dimension(Polyhedral.linf(2), [1, 0.5]) == 0


def test_face_dimension_unsupported_variant():
    spec = LipschitzFin(np.array([[0, 1.0], [1.0, 0]]))
    with pytest.raises(ApproximateOnlyError):
        face_dimension(spec, [1, 0])
    face = support_face(spec, [0, 1])
    assert not face.exact and face.functionals


def test_sphere_face_examples():
    assert sphere_face_dimension(Lp(2, 2), [1, 0]) == 0
    assert sphere_face_dimension(Polyhedral.linf(2), [1, 0.5]) == 1
    spec = BlockSum([HilbertGram(np.eye(2)), Lp(2, 1)], OuterLp(1))
    h, a = np.array([0.3, 0.4j]), 0.5
    v = np.concatenate([h, [a]])
    v = v / spec(v)
    assert sphere_face_dimension(spec, v) <= 1
    with pytest.raises(NormError):
        sphere_face_dimension(Lp(2, 2), [2, 0])


# ------------------------------------------------------------ errors


def test_errors():
    with pytest.raises(DimensionMismatch):
        norm_eval(Lp(2, 3), [1, 2])
    with pytest.raises(NormError):
        HilbertGram([[1, 2], [2, 1]])
    with pytest.raises(NormError):
        HilbertGram(np.diag([1.0, 1e-14]))
    with pytest.raises(NormError):
        Polyhedral([[1.0, 0.0], [-1.0, 0.0]])
    with pytest.raises(NormError):
        Polyhedral([[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(NormError):
        validate_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(NormError):
        validate_metric([[0, 0], [0, 0]])
    with pytest.raises(NormError):
        norm_eval(Lp(2, 2), [np.nan, 1])
    with pytest.raises(NormError):
        Polyhedral.linf(2)([1j, 0])
    with pytest.raises(NormError):
        OuterLp(0.5)


# ------------------------------------------------------------ invariants


def test_norm_axioms(rng):
    for spec in _specs(rng):
        assert norm_eval(spec, np.zeros(spec.dim)) == 0.0
        for _ in range(200 // 12 + 1):
            u, v = _rand(rng, spec), _rand(rng, spec)
            lam = rng.normal() + (1j * rng.normal() if spec.field == "complex" else 0)
            nu = spec(u)
            assert nu > 0
            assert spec(lam * u) == pytest.approx(abs(lam) * nu, rel=1e-10)
            assert spec(u + v) <= nu + spec(v) + 1e-10


@given(st.integers(0, 2**31), st.integers(1, 5),
       st.sampled_from([1.0, 1.25, 2.0, 4.0, math.inf]))
def test_lp_matches_numpy(seed, d, p):
    r = np.random.default_rng(seed)
    v = r.normal(size=d) + 1j * r.normal(size=d)
    assert Lp(p, d)(v) == pytest.approx(oracles.lp(v, p), rel=1e-12)
    q = 1.0 if p == math.inf else (math.inf if p == 1.0 else p / (p - 1))
    assert dual_norm_eval(Lp(p, d), v) == pytest.approx(oracles.lp(v, q), rel=1e-12)


def test_duality_inequality(rng):
    for spec in _specs(rng):
        for _ in range(9):
            v, phi = _rand(rng, spec), _rand(rng, spec)
            lhs = abs(np.sum(v * phi))
            assert lhs <= spec(v) * dual_norm_eval(spec, phi) * (1 + 1e-8)


def test_hilbert_dual_against_sampling(rng):
    d = 3
    G = oracles.random_gram(rng, d)
    spec = HilbertGram(G)
    phi = rng.normal(size=d) + 1j * rng.normal(size=d)
    closed = math.sqrt(np.real(phi.conj() @ np.linalg.inv(G).conj() @ phi))
    assert dual_norm_eval(spec, phi) == pytest.approx(closed, rel=1e-12)
    sampled = oracles.sampled_dual(spec, phi, d)
    assert sampled <= closed + 1e-8
    # Cauchy-Schwarz in the G inner product: the maximizer is G^-1 conj(phi)
    v = np.linalg.solve(G, np.conj(phi))
    assert abs(v @ phi) / oracles.gram_norm(G, v) == pytest.approx(closed, abs=1e-3)


def test_lipschitz_point_evaluation_closed_forms(rng):
    for _ in range(5):
        m = int(rng.integers(3, 8))
        D = oracles.random_metric(rng, m)
        spec = LipschitzFin(D, 0, True)
        eye = np.eye(m)
        for x in range(m):
            assert dual_norm_eval(spec, eye[x]) == pytest.approx(max(1.0, D[x, 0]), abs=1e-6)
            for y in range(x + 1, m):
                assert dual_norm_eval(spec, eye[x] - eye[y]) == pytest.approx(D[x, y], abs=1e-6)


def test_lipschitz_unpenalized_point_evaluation(rng):
    D = oracles.random_metric(rng, 5)
    spec = LipschitzFin(D, 0, False)
    eye = np.eye(4)
    # coordinates skip the basepoint; ||x_F|| = d(x, z) when f(z) = 0 is imposed
    for k in range(4):
        assert dual_norm_eval(spec, eye[k]) == pytest.approx(D[k + 1, 0], abs=1e-6)


def test_lipschitz_complex_dual_bounds(rng):
    D = oracles.random_metric(rng, 4)
    spec = LipschitzFin(D, 0, True)
    phi = rng.normal(size=4) + 1j * rng.normal(size=4)
    val = dual_norm_eval(spec, phi)
    assert oracles.sampled_dual(spec, phi, 4, n=3000) <= val * (1 + 1e-8)
    # real part alone gives a lower bound
    assert dual_norm_eval(spec, phi.real) <= val + 1e-8


def test_face_dimension_brute_force(rng):
    for _ in range(15):
        d = int(rng.integers(2, 4))
        n = int(rng.integers(d, 7))
        half = rng.normal(size=(n, d))
        A = np.vstack([half, -half])
        if np.linalg.matrix_rank(A) < d:
            continue
        spec = Polyhedral(A)
        # dual-ball vertices are the irredundant facets: vertices of conv(A)
        ball = oracles.polytope_vertices(A)
        facets = oracles.polytope_vertices(ball)
        for _ in range(4):
            e = rng.normal(size=d)
            if rng.uniform() < 0.5:
                e = ball[int(rng.integers(len(ball)))]
            r = np.max(facets @ e)
            active = facets[facets @ e >= r * (1 - 1e-9)]
            assert face_dimension(spec, e) == oracles.affine_rank(active)


def test_polyhedral_duality(rng):
    spec = Polyhedral.l1(3)
    dual = spec.dual()
    for _ in range(20):
        v = rng.normal(size=3)
        assert spec(v) == pytest.approx(oracles.lp(v, 1), rel=1e-12)
        assert dual(v) == pytest.approx(oracles.lp(v, np.inf), rel=1e-12)


def test_block_sum_matches_hand_formula(rng):
    spec = BlockSum([Lp(1, 2), Lp(3, 1)], OuterLp(1.5, (1.0, 2.0)))
    for _ in range(20):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        a, b = oracles.lp(v[:2], 1), oracles.lp(v[2:], 3)
        assert spec(v) == pytest.approx((a ** 1.5 + 2.0 * b ** 1.5) ** (1 / 1.5), rel=1e-12)


def test_block_sum_dual_is_block_sum_of_duals(rng):
    spec = BlockSum([Lp(np.inf, 2), Lp(2, 2)], OuterLp(3))
    for _ in range(10):
        phi = rng.normal(size=4) + 1j * rng.normal(size=4)
        want = np.linalg.norm([oracles.lp(phi[:2], 1), oracles.lp(phi[2:], 2)], 1.5)
        assert dual_norm_eval(spec, phi) == pytest.approx(want, rel=1e-10)


# ------------------------------------------------------------ JSON


def test_json_round_trip(rng):
    for spec in _specs(rng):
        doc = json.loads(json.dumps(spec.to_json()))
        back = norm_from_json(doc)
        assert type(back) is type(spec)
        for _ in range(5):
            v = _rand(rng, spec)
            assert back(v) == spec(v)


def test_complex_matrix_json(rng):
    M = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    assert np.array_equal(complex_matrix_from_json(json.loads(json.dumps(complex_matrix_to_json(M)))), M)
    mixed = complex_matrix_from_json([[1, [0, 1]], [[2, -1], 0.5]])
    assert np.array_equal(mixed, np.array([[1, 1j], [2 - 1j, 0.5]]))
    with pytest.raises(NormError):
        complex_vector_from_json("nope")
    with pytest.raises(NormError):
        norm_from_json({"variant": "Nope"})


def test_outer_lp_properties():
    rho = OuterLp(2)
    a, b = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert rho(a + b) < rho(a) + rho(b)  # strictly subadditive off rays
    assert rho([1.0, 2.0]) <= rho([1.5, 2.0])
    assert rho(2 * a) == 2 * rho(a)
    assert OuterLp(2, (1.0, 4.0)).to_json()["variant"] == "WeightedOuterLp"
