"""Multiplication operators, isometry evidence and eigenvalue propagation.

Operators are square matrices acting on coefficient vectors.  ``T`` is a
multiplication operator exactly when every point evaluation is an eigenvector
of the transpose action ``x_F -> x_F T``; the eigenvalue at ``x`` is the weight
``omega(x)``.  On a connected Birkhoff graph the eigenvalues of an isometry
cannot change along an edge, which forces a constant weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .birkhoff import _hilbert_of, probe_vectors, sampled_isometry_deviation
from .function_space import FunctionSpaceModel, ModelError
from .graph import BirkhoffGraph, build_graph
from .norms import HilbertGram, Lp, NormError, Polyhedral

DEFAULT_TOL = 1e-7
MAX_CONDITION = 1e8
DEFAULT_SAMPLES = 500


class NotAMultiplierError(ValueError):
    pass


class NotIsometricError(ValueError):
    pass


class ModeMismatch(NormError):
    pass


class EigenvalueMismatchError(ValueError):
    """Eigenvalues disagree inside a Birkhoff component."""

    def __init__(self, message, edge=None, margins=None, component=None):
        super().__init__(message)
        self.edge = edge
        self.margins = margins
        self.component = component


class VacuousCoreError(ValueError):
    """The invariant core is {0}: nothing is left to be rigid."""


# ------------------------------------------------------------ detection


@dataclass(frozen=True)
class MODetection:
    """Result of testing whether every point evaluation is an eigenvector."""

    omega: np.ndarray | None
    failing_point: object = None
    residual: float = 0.0

    @property
    def is_mo(self) -> bool:
        return self.omega is not None


def detect_mo(F: FunctionSpaceModel, T, tol: float = DEFAULT_TOL) -> MODetection:
    """Weights ``omega`` with ``x_F T = omega(x) x_F`` at every point, if they exist.

    Null evaluations impose nothing; their weight is reported as ``nan``.
    """
    T = _square(T, F.k)
    view = F.dual_view()
    omega = np.full(F.m, np.nan + 0j)
    worst = 0.0
    for x, row in zip(F.ids, F.basis):
        scale = float(np.abs(row).max())
        if scale == 0:
            continue
        img = row @ T
        k = int(np.argmax(np.abs(row)))
        w = img[k] / row[k]
        resid = view(img - w * row) / view(row)
        worst = max(worst, resid)
        if resid > tol * max(1.0, abs(w)):
            return MODetection(None, x, resid)
        omega[F.phase.index(x)] = w
    return MODetection(omega, None, worst)


def multiplier_residual(F: FunctionSpaceModel, omega) -> tuple:
    """Least-squares ``T`` with ``B T ~ diag(omega) B`` and the relative residual."""
    w = _weights(F, omega)
    B = F.basis
    target = w[:, None] * B
    T, *_ = np.linalg.lstsq(B, target, rcond=None)
    resid = np.linalg.norm(B @ T - target) / (np.linalg.norm(B) * max(1.0, np.abs(w).max()))
    return T, float(resid)


def mo_from_weight(F: FunctionSpaceModel, omega, tol: float = DEFAULT_TOL):
    """Matrix of ``f -> omega f`` on coefficients, or ``None`` when ``omega`` is not a multiplier."""
    T, resid = multiplier_residual(F, omega)
    return T if resid <= tol else None


# ------------------------------------------------------------ isometry


@dataclass(frozen=True)
class IsometryEvidence:
    """``kind`` is ``exact`` (Gram identity), ``structural`` (phase permutation
    on an Lp norm) or ``sampled`` (evidence only, never proof)."""

    kind: str
    isometric: bool
    deviation: float
    samples: int
    condition: float

    @property
    def invertible(self) -> bool:
        return self.condition <= MAX_CONDITION

    @property
    def unitary(self) -> bool:
        return self.isometric and self.invertible

    def to_json(self) -> dict:
        return {"kind": self.kind, "isometric": self.isometric, "deviation": self.deviation,
                "samples": self.samples, "condition": self.condition}


def is_phase_permutation(T, tol: float = 1e-12) -> bool:
    """One unimodular entry per row and column, zeros elsewhere."""
    T = np.asarray(T, dtype=complex)
    nz = np.abs(T) > tol
    if not (np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1)):
        return False
    return bool(np.all(np.abs(np.abs(T[nz]) - 1.0) <= tol))


def _condition(T) -> float:
    s = np.linalg.svd(T, compute_uv=False)
    return math.inf if s[-1] == 0 else float(s[0] / s[-1])


def is_isometry(F: FunctionSpaceModel, T, mode: str = "auto", samples: int = DEFAULT_SAMPLES,
                tol: float = 1e-9, seed: int = 0) -> IsometryEvidence:
    """Check ``||T c|| = ||c||`` on coefficient space.

    ``mode`` is ``exact_hilbert``, ``sampled`` or ``auto`` (exact where a
    certificate exists, sampled otherwise).
    """
    T = _square(T, F.k)
    cond = _condition(T)
    norm = F.norm
    H = _hilbert_of(norm)
    if mode == "exact_hilbert" and H is None:
        raise ModeMismatch(f"exact Hilbert check needs a Gram norm, not {type(norm).__name__}")
    if mode not in ("auto", "exact_hilbert", "sampled"):
        raise ModeMismatch(f"unknown isometry mode {mode!r}")
    if mode != "sampled" and H is not None:
        G = H.G
        dev = float(np.abs(T.conj().T @ G @ T - G).max() / np.abs(G).max())
        return IsometryEvidence("exact", bool(dev <= tol), dev, 0, cond)
    if mode == "auto" and isinstance(norm, (Lp, Polyhedral)) and _structural_ok(norm, T):
        return IsometryEvidence("structural", True, 0.0, 0, cond)
    dev = sampled_isometry_deviation(norm, T, samples, seed)
    n = samples + len(probe_vectors(norm.dim, norm.field, seed))
    return IsometryEvidence("sampled", bool(dev <= tol), float(dev), n, cond)


def _structural_ok(norm, T) -> bool:
    if not is_phase_permutation(T):
        return False
    if isinstance(norm, Lp):
        return True
    # coordinate sign changes and swaps preserve these two polyhedral norms only
    d = norm.dim
    facets = {tuple(r) for r in np.round(norm.facets, 12)}
    return np.all(np.isreal(T)) and facets in (
        {tuple(r) for r in np.round(Polyhedral.linf(d).facets, 12)},
        {tuple(r) for r in np.round(Polyhedral.l1(d).facets, 12)},
    )


# ------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class Scalar:
    lam: complex

    def to_json(self) -> dict:
        return {"kind": "Scalar", "lambda": [self.lam.real, self.lam.imag]}


@dataclass(frozen=True)
class NonScalarWitness:
    components: tuple
    values: tuple

    def to_json(self) -> dict:
        return {"kind": "NonScalarWitness", "components": list(self.components),
                "values": [[v.real, v.imag] for v in self.values]}


@dataclass(frozen=True)
class Propagation:
    components: tuple
    lambdas: tuple
    verdict: object
    max_deviation: float


def _weights(F: FunctionSpaceModel, omega) -> np.ndarray:
    if isinstance(omega, dict):
        omega = [omega[x] for x in F.ids]
    w = np.asarray(omega, dtype=complex)
    if w.ndim == 0:
        w = np.full(F.m, complex(w))
    if w.shape != (F.m,):
        raise ModelError(f"expected {F.m} weights, got shape {w.shape}")
    return w


def _square(T, k) -> np.ndarray:
    T = np.asarray(T, dtype=complex)
    if T.shape != (k, k):
        raise ModelError(f"operator must be {k}x{k}, got shape {T.shape}")
    return T


def propagate_eigenvalues(g: BirkhoffGraph, omega, tol: float = DEFAULT_TOL,
                          unimodular: bool = True) -> Propagation:
    """Per-component eigenvalue and the scalar / non-scalar verdict.

    ``omega`` maps vertex ids to weights (a mapping or a sequence in vertex
    order).  Inside a component the weights must agree to ``tol * max|omega|``.
    """
    if not isinstance(omega, dict):
        omega = dict(zip(g.vertices, np.asarray(omega, dtype=complex)))
    scale = max(1.0, max(abs(complex(omega[v])) for v in g.vertices))
    lams, worst = [], 0.0
    for k, comp in enumerate(g.components):
        vals = np.array([complex(omega[v]) for v in comp])
        spread = float(np.abs(vals[:, None] - vals[None, :]).max())
        if spread > tol * scale:
            members = set(comp)

            def jump(e):
                a, b = tuple(e)
                return abs(complex(omega[a]) - complex(omega[b]))

            edge = max((e for e in g.edges if e <= members), key=jump)
            a, b = sorted(edge, key=g.vertices.index)
            m = g.margins[edge]
            kind = "soft" if m.soft else "hard"
            raise EigenvalueMismatchError(
                f"eigenvalues differ by {spread:.3g} in component {k}; worst edge "
                f"{a!r}-{b!r} ({kind}, margins {m.xy:.3g}/{m.yx:.3g})",
                edge=(a, b), margins=(m.xy, m.yx), component=k,
            )
        lam = complex(vals.mean())
        worst = max(worst, float(np.abs(vals - lam).max()))
        if unimodular and lam != 0:
            lam = lam / abs(lam)
        lams.append(lam)
    verdict = Scalar(lams[0])
    for i in range(1, len(lams)):
        if abs(lams[i] - lams[0]) > tol * scale:
            verdict = NonScalarWitness((0, i), (lams[0], lams[i]))
            break
    return Propagation(g.components, tuple(lams), verdict, worst)


@dataclass(frozen=True)
class RigidityReport:
    ids: tuple
    omega: tuple
    components: tuple
    lambdas: tuple
    verdict: object
    isometry: IsometryEvidence
    graph: BirkhoffGraph | None = None
    core_dimension: int | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def is_scalar(self) -> bool:
        return isinstance(self.verdict, Scalar)

    def component_index(self) -> dict:
        return {v: k for k, comp in enumerate(self.components) for v in comp}

    def to_json(self) -> dict:
        from .graph import _jsonable

        out = {
            "points": [_jsonable(x) for x in self.ids],
            "omega": [[w.real, w.imag] for w in self.omega],
            "components": [[_jsonable(v) for v in c] for c in self.components],
            "lambda_per_component": [[v.real, v.imag] for v in self.lambdas],
            "verdict": self.verdict.to_json(),
            "isometry_evidence": self.isometry.to_json(),
        }
        if self.core_dimension is not None:
            out["core_dimension"] = self.core_dimension
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def table(self) -> str:
        comp = self.component_index()
        lines = [f"{'point':>12} {'omega':>28} {'comp':>5} {'lambda':>28}"]
        for x, w in zip(self.ids, self.omega):
            k = comp.get(x)
            lam = "-" if k is None else _fmt(self.lambdas[k])
            lines.append(f"{str(x):>12} {_fmt(w):>28} {'-' if k is None else k:>5} {lam:>28}")
        v = self.verdict
        if isinstance(v, Scalar):
            lines.append(f"verdict: Scalar({_fmt(v.lam)})")
        else:
            lines.append(f"verdict: NonScalarWitness(components {v.components}, "
                         f"values {_fmt(v.values[0])} vs {_fmt(v.values[1])})")
        ev = self.isometry
        lines.append(f"isometry: {ev.kind}, deviation {ev.deviation:.6g}, "
                     f"samples {ev.samples}, condition {ev.condition:.6g}")
        return "\n".join(lines)


def _fmt(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _verdict_from_operator(F, T, omega, tol, isometry_mode, graph, notes=()):
    ev = is_isometry(F, T, isometry_mode)
    if not ev.isometric:
        raise NotIsometricError(
            f"operator is not isometric ({ev.kind} deviation {ev.deviation:.3g})")
    if not ev.invertible:
        raise NotIsometricError(f"operator is not invertible (condition {ev.condition:.3g})")
    live = F.nonnull_points()
    sub = F if len(live) == F.m else F.restrict(live)
    g = graph if graph is not None else build_graph(sub, tol)
    w = dict(zip(F.ids, omega))
    prop = propagate_eigenvalues(g, {x: w[x] for x in g.vertices}, tol)
    if g.is_connected and not isinstance(prop.verdict, Scalar):  # pragma: no cover
        raise AssertionError("connected graph produced a non-scalar verdict")
    return RigidityReport(tuple(F.ids), tuple(complex(v) for v in omega), prop.components,
                          prop.lambdas, prop.verdict, ev, g, notes=tuple(notes))


def rigidity_verdict(F: FunctionSpaceModel, omega, tol: float = DEFAULT_TOL,
                     isometry_mode: str = "auto", graph: BirkhoffGraph | None = None) -> RigidityReport:
    """Full pipeline for a weight: multiplier, unitarity, graph, propagation."""
    w = _weights(F, omega)
    T = mo_from_weight(F, w, tol)
    if T is None:
        _, resid = multiplier_residual(F, w)
        raise NotAMultiplierError(f"weight is not a multiplier (relative residual {resid:.3g})")
    return _verdict_from_operator(F, T, w, tol, isometry_mode, graph)


def rigidity_from_operator(F: FunctionSpaceModel, T, tol: float = DEFAULT_TOL,
                           isometry_mode: str = "auto") -> RigidityReport:
    """Same pipeline starting from an operator matrix instead of a weight."""
    det = detect_mo(F, T, tol)
    if not det.is_mo:
        raise NotAMultiplierError(
            f"evaluation at {det.failing_point!r} is not an eigenvector (residual {det.residual:.3g})")
    return _verdict_from_operator(F, _square(T, F.k), det.omega, tol, isometry_mode, None)


# ------------------------------------------------------------ weighted composition


@dataclass(frozen=True)
class WCOComparison:
    lam: complex
    ratios: dict
    propagation: Propagation
    isometry: IsometryEvidence

    @property
    def unimodular(self) -> bool:
        return abs(abs(self.lam) - 1.0) <= 1e-9


def wco_matrix(F: FunctionSpaceModel, E: FunctionSpaceModel, phi, omega, tol: float = DEFAULT_TOL):
    """Coefficient matrix of ``f -> omega (f o phi)`` from ``F`` into ``E``, or ``None``."""
    w = _weights(E, omega)
    idx = [F.phase.index(phi[y]) for y in E.ids]
    target = w[:, None] * F.basis[idx]
    W, *_ = np.linalg.lstsq(E.basis, target, rcond=None)
    resid = np.linalg.norm(E.basis @ W - target) / max(np.linalg.norm(target), 1e-300)
    return W if resid <= tol else None


def wco_compare(F: FunctionSpaceModel, E: FunctionSpaceModel, phi, omega, upsilon, S,
                tol: float = DEFAULT_TOL) -> WCOComparison:
    """Given ``W_{phi,omega} = W_{phi,upsilon} S``, recover ``lambda`` with ``upsilon = lambda omega``.

    ``phi`` maps each E-point id to an F-point id.
    """
    w, u = _weights(E, omega), _weights(E, upsilon)
    if np.any(np.abs(u) <= 1e-15):
        raise ModelError("upsilon vanishes somewhere")
    S = _square(S, F.k)
    Ww = wco_matrix(F, E, phi, w, tol)
    Wu = wco_matrix(F, E, phi, u, tol)
    if Ww is None or Wu is None:
        raise NotAMultiplierError("a weighted composition operator does not map F into E")
    viol = np.linalg.norm(Ww - Wu @ S) / max(np.linalg.norm(Ww), 1e-300)
    if viol > tol:
        raise ModelError(f"W_phi,omega = W_phi,upsilon S violated (relative {viol:.3g})")
    ev = is_isometry(F, S)
    ratios = {}
    for y, a, b in zip(E.ids, w, u):
        x = phi[y]
        r = complex(a / b)
        if x in ratios and abs(ratios[x] - r) > tol * max(1.0, abs(r)):
            raise EigenvalueMismatchError(f"two points map to {x!r} with different ratios")
        ratios.setdefault(x, r)
    image = [x for x in F.ids if x in ratios]
    sub = F.restrict(image)
    live = sub.nonnull_points()
    sub = sub.restrict(live)
    g = build_graph(sub, tol)
    prop = propagate_eigenvalues(g, {x: ratios[x] for x in live}, tol, unimodular=False)
    if not isinstance(prop.verdict, Scalar):
        raise EigenvalueMismatchError(
            f"ratios omega/upsilon are not constant across components {prop.verdict.components}")
    lam = 1.0 / prop.verdict.lam
    return WCOComparison(lam, ratios, prop, ev)


# ------------------------------------------------------------ invariant core


@dataclass(frozen=True)
class Core:
    basis: np.ndarray
    n_star: int
    dimensions: tuple

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]


def _orth(A, tol):
    if A.shape[1] == 0:
        return A
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
    return U[:, :r]


def invariant_core(F: FunctionSpaceModel | None, M, n_max: int | None = None,
                   tol: float = 1e-10) -> Core:
    """Orthonormal basis of ``range(M) ∩ range(M^2) ∩ ...``.

    The ranges are nested, so the intersection is ``range(M^n)`` once the
    dimension stops dropping; that happens by ``n = k``.  ``n_star`` is the
    first ``n >= 1`` with ``dim range(M^n) = dim range(M^{n+1})``.
    """
    M = np.asarray(M, dtype=complex)
    k = M.shape[0]
    if F is not None:
        M = _square(M, F.k)
    if n_max is None:
        n_max = k + 1
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    Q = _orth(M, tol)
    dims = [Q.shape[1]]
    for n in range(1, n_max + 1):
        Q2 = _orth(M @ Q, tol)
        dims.append(Q2.shape[1])
        if Q2.shape[1] == Q.shape[1]:
            return Core(Q, n, tuple(dims))
        Q = Q2
    return Core(Q, n_max, tuple(dims))


def range_powers(M, n_max: int, tol: float = 1e-10) -> list:
    """Orthonormal bases of ``range(M^n)`` for ``n = 1..n_max``."""
    M = np.asarray(M, dtype=complex)
    out = [_orth(M, tol)]
    for _ in range(n_max - 1):
        out.append(_orth(M @ out[-1], tol))
    return out


def subspace_contained(A, B, tol: float = 1e-10) -> bool:
    """``span A ⊆ span B`` for orthonormal column bases."""
    if A.shape[1] == 0:
        return True
    if B.shape[1] == 0:
        return False
    return bool(np.linalg.norm(A - B @ (B.conj().T @ A)) <= tol * max(1, A.shape[1]))


def restrict_to_core(F: FunctionSpaceModel, Q) -> FunctionSpaceModel:
    """The Hilbert model on the subspace spanned by the columns of ``Q``."""
    H = _hilbert_of(F.norm)
    if H is None:
        raise ModeMismatch("restriction to a core is implemented for Gram norms")
    G = Q.conj().T @ H.G @ Q
    G = (G + G.conj().T) / 2
    sub = FunctionSpaceModel(F.phase, F.basis @ Q, HilbertGram(G), F.flags, check_rank=False)
    live = sub.nonnull_points()
    return sub if len(live) == sub.m else sub.restrict(live)


def isometry_rigidity(F: FunctionSpaceModel, omega, tol: float = DEFAULT_TOL,
                      n_max: int | None = None, M=None) -> RigidityReport:
    """Rigidity on the invariant core of ``M`` (``M_omega`` unless supplied)."""
    w = _weights(F, omega)
    if M is None:
        M = mo_from_weight(F, w, tol)
        if M is None:
            raise NotAMultiplierError("weight is not a multiplier")
    core = invariant_core(F, M, n_max)
    if core.dimension == 0:
        raise VacuousCoreError("vacuous: the invariant core is {0}, no rigidity content at this truncation")
    Q = core.basis
    Fc = restrict_to_core(F, Q)
    Mc = Q.conj().T @ np.asarray(M, dtype=complex) @ Q
    wc = np.array([w[F.phase.index(x)] for x in Fc.ids])
    rep = _verdict_from_operator(Fc, Mc, wc, tol, "auto", None,
                                 notes=(f"core dimension {core.dimension} of {F.k}, n*={core.n_star}",))
    return RigidityReport(rep.ids, rep.omega, rep.components, rep.lambdas, rep.verdict,
                          rep.isometry, rep.graph, core.dimension, rep.notes)


__all__ = [
    "Core",
    "EigenvalueMismatchError",
    "IsometryEvidence",
    "MODetection",
    "ModeMismatch",
    "NonScalarWitness",
    "NotAMultiplierError",
    "NotIsometricError",
    "Propagation",
    "RigidityReport",
    "Scalar",
    "VacuousCoreError",
    "WCOComparison",
    "detect_mo",
    "invariant_core",
    "is_isometry",
    "is_phase_permutation",
    "isometry_rigidity",
    "mo_from_weight",
    "multiplier_residual",
    "propagate_eigenvalues",
    "rigidity_from_operator",
    "rigidity_verdict",
    "wco_compare",
]
