"""Finite models of normed spaces of continuous functions.

A model is a sampled phase space of ``m`` points, an ``m x k`` basis matrix
``B`` (column ``j`` holds basis function ``j`` at every point) and a norm on
coefficient vectors.  A function is a coefficient vector ``c`` with values
``B c``; the point evaluation at ``x`` is the row ``B[x]``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .norms import (
    BlockSum,
    HilbertGram,
    LipschitzFin,
    Lp,
    Norm,
    NormError,
    OuterLp,
    complex_matrix_from_json,
    complex_matrix_to_json,
    norm_from_json,
    validate_metric,
)

NULL_TOL = 1e-12
OMEGA_ZERO_FLAG = "omega(0)=1 convention used at the origin"


class ModelError(ValueError):
    pass


class UnknownPoint(ModelError, KeyError):
    pass


def _id_to_json(x):
    return [_id_to_json(v) for v in x] if isinstance(x, tuple) else x


def _id_from_json(x):
    # JSON has no tuples; composite ids come back as lists
    return tuple(_id_from_json(v) for v in x) if isinstance(x, list) else x


@dataclass(frozen=True)
class PhaseSpace:
    """Sample points plus the proximity structure used as connectivity ground truth.

    Proximity is either a metric (points closer than ``epsilon`` are near) or
    an explicit adjacency mapping.
    """

    ids: tuple
    coords: np.ndarray | None = None
    metric: np.ndarray | None = None
    epsilon: float | None = None
    adjacency: dict | None = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = tuple(self.ids)
        object.__setattr__(self, "ids", ids)
        if len(set(ids)) != len(ids):
            raise ModelError("point ids must be unique")
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(ids)})
        if self.coords is not None:
            c = np.asarray(self.coords, dtype=complex)
            if c.shape != (len(ids),):
                raise ModelError("one coordinate per point required")
            object.__setattr__(self, "coords", c)
        if self.metric is not None:
            D = validate_metric(self.metric)
            if D.shape[0] != len(ids):
                raise ModelError("metric size does not match the number of points")
            object.__setattr__(self, "metric", D)
        if self.adjacency is not None:
            adj = {x: tuple(v) for x, v in self.adjacency.items()}
            for x, nbrs in adj.items():
                self.index(x)
                for y in nbrs:
                    if x not in adj.get(y, ()):
                        raise ModelError(f"adjacency is not symmetric at {x!r}-{y!r}")
            object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_coords(cls, coords, ids=None, epsilon=None) -> "PhaseSpace":
        coords = np.asarray(coords, dtype=complex)
        D = np.abs(coords[:, None] - coords[None, :])
        return cls(tuple(range(len(coords))) if ids is None else tuple(ids), coords, D, epsilon)

    def __len__(self):
        return len(self.ids)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"unknown point id {x!r}") from None

    def proximity_edges(self) -> list:
        """Pairs ``(i, j)``, ``i < j``, of near points (by index)."""
        if self.adjacency is not None:
            return sorted({tuple(sorted((self.index(x), self.index(y))))
                           for x, nbrs in self.adjacency.items() for y in nbrs})
        if self.metric is None or self.epsilon is None:
            raise ModelError("phase space has no proximity structure")
        i, j = np.nonzero(np.triu(self.metric <= self.epsilon, 1))
        return list(zip(i.tolist(), j.tolist()))

    def proximity_components(self) -> list:
        """Classes of point ids under the proximity relation, ordered by first member."""
        from .graph import DisjointSet

        ds = DisjointSet(len(self))
        for i, j in self.proximity_edges():
            ds.union(i, j)
        return [[self.ids[i] for i in grp] for grp in ds.groups()]

    def is_connected(self) -> bool:
        return len(self.proximity_components()) == 1

    def to_json(self) -> dict:
        pts = []
        for k, x in enumerate(self.ids):
            rec = {"id": _id_to_json(x)}
            if self.coords is not None:
                rec["coord"] = [float(self.coords[k].real), float(self.coords[k].imag)]
            pts.append(rec)
        prox = {}
        if self.metric is not None:
            prox["metric"] = self.metric.tolist()
        if self.epsilon is not None:
            prox["epsilon"] = self.epsilon
        if self.adjacency is not None:
            prox["adjacency"] = {str(_id_to_json(x)): [_id_to_json(y) for y in v]
                                 for x, v in self.adjacency.items()}
        return {"points": pts, "proximity": prox}

    @classmethod
    def from_json(cls, points: list, proximity: dict | None) -> "PhaseSpace":
        ids = tuple(_id_from_json(p["id"] if isinstance(p, dict) else p) for p in points)
        coords = None
        if points and isinstance(points[0], dict) and "coord" in points[0]:
            coords = np.array([complex(*p["coord"]) for p in points])
        proximity = proximity or {}
        adjacency = proximity.get("adjacency")
        if adjacency is not None:
            lookup = {str(_id_to_json(x)): x for x in ids}
            adjacency = {lookup[k]: [lookup[str(y)] for y in v] for k, v in adjacency.items()}
        return cls(ids, coords, proximity.get("metric"), proximity.get("epsilon"), adjacency)


@dataclass(frozen=True)
class FunctionSpaceModel:
    phase: PhaseSpace
    basis: np.ndarray
    norm: Norm
    flags: tuple = ()
    check_rank: bool = True

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=complex)
        if B.ndim != 2:
            raise ModelError("basis must be a 2-d matrix")
        m, k = B.shape
        if m != len(self.phase) or m < 1 or k < 1:
            raise ModelError(f"basis shape {B.shape} does not match {len(self.phase)} points")
        if self.norm.dim != k:
            raise ModelError(f"coefficient norm has dimension {self.norm.dim}, basis has {k} columns")
        if self.check_rank and np.linalg.matrix_rank(B) < k:
            raise ModelError("basis functions are linearly dependent on the sample")
        object.__setattr__(self, "basis", B)

    @property
    def m(self) -> int:
        return self.basis.shape[0]

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    @property
    def ids(self) -> tuple:
        return self.phase.ids

    def values(self, c) -> np.ndarray:
        return self.basis @ np.asarray(c, dtype=complex)

    def point_evaluation(self, x) -> np.ndarray:
        """Coefficient representation of ``f -> f(x)``."""
        return self.basis[self.phase.index(x)].copy()

    def evaluations(self) -> np.ndarray:
        return self.basis

    def dual_view(self) -> Norm:
        """The dual coefficient norm, in which point evaluations are compared."""
        return self.norm.dual()

    def restrict(self, ids) -> "FunctionSpaceModel":
        """Same function space, sampled only at ``ids``."""
        idx = [self.phase.index(x) for x in ids]
        ph = self.phase
        sub_adj = None
        if ph.adjacency is not None:
            keep = set(ids)
            sub_adj = {x: [y for y in ph.adjacency.get(x, ()) if y in keep] for x in ids}
        phase = PhaseSpace(
            tuple(ids),
            None if ph.coords is None else ph.coords[idx],
            None if ph.metric is None else ph.metric[np.ix_(idx, idx)],
            ph.epsilon,
            sub_adj,
        )
        return FunctionSpaceModel(phase, self.basis[idx], self.norm, self.flags, check_rank=False)

    def nonnull_points(self, tol: float = NULL_TOL) -> list:
        scale = max(1.0, float(np.abs(self.basis).max()))
        return [x for x, row in zip(self.ids, self.basis) if np.abs(row).max() > tol * scale]

    def to_json(self) -> dict:
        out = self.phase.to_json()
        out["basis"] = complex_matrix_to_json(self.basis)
        out["norm"] = self.norm.to_json()
        if self.flags:
            out["flags"] = list(self.flags)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "FunctionSpaceModel":
        try:
            phase = PhaseSpace.from_json(d["points"], d.get("proximity"))
            basis = complex_matrix_from_json(d["basis"])
            norm = norm_from_json(d["norm"])
        except KeyError as exc:
            raise ModelError(f"model description is missing {exc}") from None
        return cls(phase, basis, norm, tuple(d.get("flags", ())))


def point_evaluation(F: FunctionSpaceModel, x) -> np.ndarray:
    return F.point_evaluation(x)


def dual_space_view(F: FunctionSpaceModel) -> Norm:
    return F.dual_view()


def is_1_independent(F: FunctionSpaceModel, tol: float = NULL_TOL):
    """No point evaluation vanishes.  Returns ``(ok, violating ids)``."""
    scale = max(1.0, float(np.abs(F.basis).max()))
    bad = [x for x, row in zip(F.ids, F.basis) if np.abs(row).max() <= tol * scale]
    return not bad, bad


def is_2_independent(F: FunctionSpaceModel, tol: float = 1e-12):
    """Every pair of point evaluations is linearly independent.

    Returns ``(ok, first violating pair or None)``.
    """
    B = F.basis
    norms2 = np.sum(np.abs(B) ** 2, axis=1)
    G = B.conj() @ B.T
    m = F.m
    for i in range(m):
        for j in range(i + 1, m):
            denom = norms2[i] * norms2[j]
            det = denom - abs(G[i, j]) ** 2
            if denom == 0 or det <= tol * denom:
                return False, (F.ids[i], F.ids[j])
    return True, None


# --------------------------------------------------------------- constructors


def omega_unit(z):
    """``z / |z|`` with the convention ``omega(0) = 1``."""
    z = np.asarray(z, dtype=complex)
    a = np.abs(z)
    return np.where(a > 0, z / np.where(a > 0, a, 1.0), 1.0 + 0j)


def rkhs_indices(kind: str, N: int) -> np.ndarray:
    if kind == "unilateral":
        return np.arange(0, N + 1)
    if kind == "bilateral":
        return np.arange(-N, N + 1)
    raise ModelError(f"unknown kernel kind {kind!r}")


def rkhs_basis_values(points, kind: str, N: int) -> np.ndarray:
    """``e_n(z) = z omega(z)^n / 2^|n|`` for the requested index range."""
    z = np.asarray(points, dtype=complex)
    n = rkhs_indices(kind, N)
    w = omega_unit(z)
    return z[:, None] * w[:, None] ** n[None, :] / 2.0 ** np.abs(n)[None, :]


def kernel_partial_sum(z, w, N: int, kind: str = "unilateral") -> complex:
    ez = rkhs_basis_values([z], kind, N)[0]
    ew = rkhs_basis_values([w], kind, N)[0]
    return complex(np.sum(ez * np.conj(ew)))


def kernel_closed_form(z, w) -> complex:
    """``4 z conj(w) / (4 |z||w| - z conj(w))`` for the unilateral family."""
    z, w = complex(z), complex(w)
    zw = z * w.conjugate()
    return 4 * zw / (4 * abs(z) * abs(w) - zw)


def rkhs_from_kernel(points, kind: str = "unilateral", N: int = 2, ids=None,
                     epsilon=None) -> FunctionSpaceModel:
    """Hilbert model with orthonormal basis ``e_n``, sampled at ``points``."""
    if N < 1:
        raise ModelError("N must be at least 1")
    pts = np.asarray(points, dtype=complex)
    if np.any(np.abs(pts) > 1 + 1e-12):
        raise ModelError("points must lie in the closed unit disk")
    flags = ()
    if np.any(pts == 0):
        warnings.warn("point 0 sampled: using omega(0)=1; its evaluation vanishes", stacklevel=2)
        flags = (OMEGA_ZERO_FLAG,)
    B = rkhs_basis_values(pts, kind, N)
    phase = PhaseSpace.from_coords(pts, ids, epsilon)
    return FunctionSpaceModel(phase, B, HilbertGram(np.eye(B.shape[1])), flags,
                              check_rank=B.shape[0] >= B.shape[1])


def lipschitz_space(metric, basepoint: int = 0, penalize: bool = True, ids=None,
                    coords=None, epsilon=None) -> FunctionSpaceModel:
    """Lipschitz functions on a finite metric space in the delta basis."""
    D = validate_metric(metric)
    m = D.shape[0]
    norm = LipschitzFin(D, basepoint, penalize)
    B = np.eye(m, dtype=complex)
    if not penalize:
        B = B[:, [i for i in range(m) if i != basepoint]]
    ids = tuple(range(m)) if ids is None else tuple(ids)
    phase = PhaseSpace(ids, coords, D, epsilon)
    return FunctionSpaceModel(phase, B, norm)


def sup_norm_space(phase: PhaseSpace) -> FunctionSpaceModel:
    """All functions on the sample with the sup norm (delta basis)."""
    m = len(phase)
    return FunctionSpaceModel(phase, np.eye(m, dtype=complex), Lp(np.inf, m))


def hilbert_feature_space(phase: PhaseSpace, basis, gram=None) -> FunctionSpaceModel:
    """Span of the given feature columns with coefficient Gram ``gram`` (identity by default)."""
    B = np.asarray(basis, dtype=complex)
    G = np.eye(B.shape[1]) if gram is None else gram
    return FunctionSpaceModel(phase, B, HilbertGram(G))


def hilbert_from_kernel_matrix(K, phase: PhaseSpace | None = None) -> FunctionSpaceModel:
    """Delta-basis Hilbert model whose point evaluations have Gram matrix ``K``.

    The function norm is ``||f||^2 = f^H K^{-1} f``; the dual inner product of
    the evaluations at ``x`` and ``y`` is ``K[y, x]``.
    """
    K = np.asarray(K, dtype=complex)
    m = K.shape[0]
    if phase is None:
        phase = PhaseSpace(tuple(range(m)))
    return FunctionSpaceModel(phase, np.eye(m, dtype=complex), HilbertGram(np.linalg.inv(K)))


def disjoint_sum(F: FunctionSpaceModel, E: FunctionSpaceModel, gap: float | None = None,
                 p: float = 2.0) -> FunctionSpaceModel:
    """Functions on the disjoint union with ``||h|| = ||(||h|_X||, ||h|_Y||)||_p``.

    Ids become ``("X", x)`` and ``("Y", y)``.  When both phases carry a metric
    the cross distance is ``gap`` (default: twice the larger epsilon).
    """
    ids = tuple(("X", x) for x in F.ids) + tuple(("Y", y) for y in E.ids)
    B = scipy.linalg.block_diag(F.basis, E.basis)
    metric = None
    eps = F.phase.epsilon if F.phase.epsilon is not None else E.phase.epsilon
    if F.phase.metric is not None and E.phase.metric is not None:
        eps_all = [e for e in (F.phase.epsilon, E.phase.epsilon) if e is not None]
        cross = gap if gap is not None else 2.0 * max(eps_all + [1.0])
        cross = max(cross, F.phase.metric.max(), E.phase.metric.max())
        metric = np.block([
            [F.phase.metric, np.full((F.m, E.m), cross)],
            [np.full((E.m, F.m), cross), E.phase.metric],
        ])
        eps = max(eps_all) if eps_all else None
    phase = PhaseSpace(ids, None, metric, eps)
    norm = BlockSum([F.norm, E.norm], OuterLp(p))
    return FunctionSpaceModel(phase, B, norm)


def model_from_norm_only(norm: Norm) -> FunctionSpaceModel:
    """Delta-basis model over ``norm.dim`` abstract points (for norm-only space files)."""
    phase = PhaseSpace(tuple(range(norm.dim)))
    return FunctionSpaceModel(phase, np.eye(norm.dim, dtype=complex), norm)


__all__ = [
    "FunctionSpaceModel",
    "ModelError",
    "NormError",
    "PhaseSpace",
    "UnknownPoint",
    "disjoint_sum",
    "dual_space_view",
    "hilbert_feature_space",
    "hilbert_from_kernel_matrix",
    "is_1_independent",
    "is_2_independent",
    "kernel_closed_form",
    "kernel_partial_sum",
    "lipschitz_space",
    "model_from_norm_only",
    "omega_unit",
    "point_evaluation",
    "rkhs_basis_values",
    "rkhs_from_kernel",
    "sup_norm_space",
]
