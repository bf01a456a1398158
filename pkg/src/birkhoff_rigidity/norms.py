"""Norms on coordinate space: primal and dual evaluation, norming faces.

Vectors are complex numpy arrays.  Functionals act through the bilinear
pairing ``<f, phi> = sum(phi * f)`` (no conjugation), so the dual of a norm is
again a norm on the same coordinate space.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize
from scipy.spatial import ConvexHull

from . import kernels

DEFAULT_TOL = 1e-9
MAX_GRAM_CONDITION = 1e12


class NormError(ValueError):
    """Malformed norm description or incompatible input."""


class DimensionMismatch(NormError):
    pass


class ApproximateOnlyError(NormError):
    """Raised where only a sampled (approximate) answer exists for a variant."""


def as_cvec(v, dim: int | None = None) -> np.ndarray:
    a = np.ascontiguousarray(v, dtype=complex)
    if a.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise NormError("vector has non-finite entries")
    return a


def affine_dimension(points, tol: float = 1e-9) -> int:
    """Affine dimension of a finite point set in R^n or C^n (real dimension)."""
    pts = [np.asarray(p) for p in points]
    if len(pts) <= 1:
        return 0
    diffs = np.array([p - pts[0] for p in pts[1:]])
    if np.iscomplexobj(diffs):
        diffs = np.hstack([diffs.real, diffs.imag])
    scale = max(1.0, float(np.abs(diffs).max()))
    return int(np.linalg.matrix_rank(diffs, tol=tol * scale))


@dataclass
class Face:
    """A description of the norming set of a vector.

    ``functionals`` spans the face (extreme points when ``exact``).  ``dimension``
    is the real affine dimension when known.
    """

    functionals: list
    exact: bool
    dimension: int | None = None
    note: str = ""


class Norm:
    """Base class.  Subclasses implement ``_value`` and ``dual``."""

    dim: int
    field = "complex"

    @property
    def conj_invariant(self) -> bool:
        return True

    @property
    def real_dim(self) -> int:
        return self.dim if self.field == "real" else 2 * self.dim

    def _check(self, v) -> np.ndarray:
        a = as_cvec(v, self.dim)
        if self.field == "real" and np.any(np.abs(a.imag) > 1e-12 * max(1.0, np.abs(a).max())):
            raise NormError(f"{type(self).__name__} is a norm on a real space; got complex input")
        if self.field == "real":
            a = a.real.astype(complex)
        return a

    def __call__(self, v) -> float:
        return float(self._value(self._check(v)))

    def _value(self, v: np.ndarray) -> float:
        raise NotImplementedError

    def kernel_ctx(self):
        """Compiled-kernel context ``(kind, p, M)`` or ``None``."""
        return None

    def dual(self) -> "Norm":
        raise NotImplementedError

    def dual_value(self, phi, tol: float = DEFAULT_TOL) -> float:
        return self.dual()(phi)

    def norming_face(self, e, tol: float = DEFAULT_TOL) -> Face:
        raise ApproximateOnlyError(f"no norming-face computation for {type(self).__name__}")

    def face_dimension(self, e, tol: float = DEFAULT_TOL) -> int:
        face = self.norming_face(e, tol)
        if not face.exact or face.dimension is None:
            raise ApproximateOnlyError(
                f"{type(self).__name__} has only sampled norming faces; use support_face"
            )
        return face.dimension

    def sphere_face_dimension(self, e, tol: float = DEFAULT_TOL) -> int:
        raise ApproximateOnlyError(f"sphere faces not computable for {type(self).__name__}")

    def max_sphere_face_dimension(self) -> int:
        raise ApproximateOnlyError(f"sphere faces not computable for {type(self).__name__}")

    def _require_sphere(self, e, tol):
        e = self._check(e)
        r = self._value(e)
        if abs(r - 1.0) > max(tol, 1e-12):
            raise NormError(f"point is not on the unit sphere (norm {r!r})")
        return e

    def to_json(self) -> dict:
        raise NotImplementedError


# --------------------------------------------------------------------------- Lp


class Lp(Norm):
    def __init__(self, p, dim: int):
        p = float(p)
        if not (p >= 1.0):
            raise NormError(f"Lp exponent must be in [1, inf], got {p}")
        if dim < 1:
            raise NormError("dimension must be positive")
        self.p = p
        self.dim = int(dim)
        self._ctx = (kernels.KIND_LP, p, np.zeros((1, 1), dtype=complex))

    def __repr__(self):
        return f"Lp({self.p}, dim={self.dim})"

    def _value(self, v):
        return kernels.norm_kernel(self._ctx, v)

    def kernel_ctx(self):
        return self._ctx

    @property
    def conjugate_exponent(self) -> float:
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    def dual(self):
        return Lp(self.conjugate_exponent, self.dim)

    def norming_face(self, e, tol=DEFAULT_TOL):
        e = self._check(e)
        r = self._value(e)
        if r == 0:
            raise NormError("the zero vector has no norming face")
        a = np.abs(e)
        phase = np.where(a > 0, np.conj(e) / np.where(a > 0, a, 1.0), 0.0)
        if math.isinf(self.p):
            active = np.flatnonzero(a >= r * (1 - tol))
            funcs = []
            for i in active:
                nu = np.zeros(self.dim, dtype=complex)
                nu[i] = phase[i]
                funcs.append(nu)
            return Face(funcs, exact=True, dimension=len(active) - 1)
        if self.p == 1.0:
            zeros = np.flatnonzero(a <= tol * r)
            base = phase.copy()
            base[zeros] = 0.0
            funcs = [base]
            for i in zeros:
                for u in (1.0, 1j):
                    nu = base.copy()
                    nu[i] = u
                    funcs.append(nu)
            return Face(funcs, exact=True, dimension=2 * len(zeros),
                        note="product of unit disks on the zero coordinates")
        nu = phase * a ** (self.p - 1.0) / r ** (self.p - 1.0)
        return Face([nu], exact=True, dimension=0)

    def sphere_face_dimension(self, e, tol=DEFAULT_TOL):
        self._require_sphere(e, tol)
        return self.max_sphere_face_dimension()

    def max_sphere_face_dimension(self):
        if math.isinf(self.p):
            return 2 * (self.dim - 1)
        if self.p == 1.0:
            return self.dim - 1
        return 0

    def to_json(self):
        return {"variant": "Lp", "p": "inf" if math.isinf(self.p) else self.p, "dim": self.dim}


# ------------------------------------------------------------------ HilbertGram


class HilbertGram(Norm):
    """``||v||^2 = v^H G v`` for a Hermitian positive-definite ``G``."""

    def __init__(self, G):
        G = np.array(G, dtype=complex)
        if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] < 1:
            raise NormError(f"Gram matrix must be square, got shape {G.shape}")
        scale = max(1.0, float(np.abs(G).max()))
        if np.abs(G - G.conj().T).max() > 1e-12 * scale:
            raise NormError("Gram matrix is not Hermitian")
        G = 0.5 * (G + G.conj().T)
        try:
            L = np.linalg.cholesky(G)
        except np.linalg.LinAlgError as exc:
            raise NormError("Gram matrix is not positive definite") from exc
        cond = np.linalg.cond(G)
        if not np.isfinite(cond) or cond > MAX_GRAM_CONDITION:
            raise NormError(f"Gram matrix condition number {cond:.3g} exceeds {MAX_GRAM_CONDITION:g}")
        self.G = G
        self.dim = G.shape[0]
        self._U = np.ascontiguousarray(L.conj().T)
        self._ctx = (kernels.KIND_GRAM, 0.0, self._U)

    def __repr__(self):
        return f"HilbertGram(dim={self.dim})"

    @property
    def conj_invariant(self):
        return bool(np.all(self.G.imag == 0))

    def _value(self, v):
        return kernels.norm_kernel(self._ctx, v)

    def kernel_ctx(self):
        return self._ctx

    def inner(self, u, v) -> complex:
        """``<u, v>_G = v^H G u`` (linear in the first slot)."""
        return complex(np.conj(v) @ self.G @ u)

    def dual(self):
        # sup |phi^T f| over f^H G f <= 1 equals sqrt(phi^H conj(G^{-1}) phi)
        Ginv = scipy.linalg.cho_solve((self._U, False), np.eye(self.dim))
        return HilbertGram(np.conj(Ginv))

    def norming_face(self, e, tol=DEFAULT_TOL):
        e = self._check(e)
        r = self._value(e)
        if r == 0:
            raise NormError("the zero vector has no norming face")
        return Face([np.conj(self.G @ e) / r], exact=True, dimension=0)

    def sphere_face_dimension(self, e, tol=DEFAULT_TOL):
        self._require_sphere(e, tol)
        return 0

    def max_sphere_face_dimension(self):
        return 0

    def to_json(self):
        return {"variant": "HilbertGram", "G": complex_matrix_to_json(self.G)}


# ------------------------------------------------------------------- Polyhedral


class Polyhedral(Norm):
    """``||x|| = max_j <a_j, x>`` on R^d for a symmetric, spanning facet set."""

    field = "real"

    def __init__(self, facets):
        A = np.array(facets, dtype=float)
        if A.ndim != 2 or A.shape[0] < 2:
            raise NormError("facets must be a non-empty 2-d array")
        if not np.all(np.isfinite(A)):
            raise NormError("facets must be finite")
        scale = max(1.0, float(np.abs(A).max()))
        for row in A:
            if np.abs(A + row).sum(axis=1).min() > 1e-12 * scale:
                raise NormError("facet set is not symmetric under negation")
        if np.linalg.matrix_rank(A) < A.shape[1]:
            raise NormError("facets do not span: the unit ball is unbounded")
        self.facets = A
        self.dim = A.shape[1]
        self._ctx = (kernels.KIND_POLY, 0.0, np.ascontiguousarray(A.astype(complex)))
        self._vertices = None

    @classmethod
    def linf(cls, dim: int) -> "Polyhedral":
        eye = np.eye(dim)
        return cls(np.vstack([eye, -eye]))

    @classmethod
    def l1(cls, dim: int) -> "Polyhedral":
        return cls(np.array(list(itertools.product((-1.0, 1.0), repeat=dim))))

    def __repr__(self):
        return f"Polyhedral({self.facets.shape[0]} facets, dim={self.dim})"

    def _value(self, v):
        return kernels.norm_kernel(self._ctx, v)

    def kernel_ctx(self):
        return self._ctx

    def vertices(self) -> np.ndarray:
        """Vertices of the unit ball (= facet functionals of the dual ball)."""
        if self._vertices is None:
            self._vertices = _polar_vertices(self.facets)
        return self._vertices

    def extreme_facets(self) -> np.ndarray:
        """The irredundant facet functionals (vertices of the dual ball)."""
        return _polar_vertices(self.vertices())

    def dual(self):
        return Polyhedral(self.vertices())

    def norming_face(self, e, tol=DEFAULT_TOL):
        e = self._check(e).real
        vals = self.facets @ e
        r = vals.max()
        if r <= 0:
            raise NormError("the zero vector has no norming face")
        active = _unique_rows(self.facets[vals >= r * (1 - tol)])
        # keep only extreme points of the face
        ext = self.extreme_facets()
        ext_vals = ext @ e
        extreme = _unique_rows(ext[ext_vals >= r * (1 - tol)])
        funcs = [row for row in extreme] if len(extreme) else [row for row in active]
        return Face(funcs, exact=True, dimension=affine_dimension(funcs))

    def sphere_face_dimension(self, e, tol=DEFAULT_TOL):
        e = self._require_sphere(e, tol).real
        V = self.vertices()
        best = 0
        for a in self.extreme_facets():
            if a @ e >= 1 - tol:
                on = V[V @ a >= 1 - 1e-9]
                best = max(best, affine_dimension(list(on)))
        return best

    def max_sphere_face_dimension(self):
        return self.dim - 1

    def to_json(self):
        return {"variant": "Polyhedral", "facets": self.facets.tolist()}


def _unique_rows(A, decimals: int = 12):
    if len(A) == 0:
        return A
    _, idx = np.unique(np.round(A, decimals), axis=0, return_index=True)
    return A[np.sort(idx)]


def _polar_vertices(A: np.ndarray) -> np.ndarray:
    """Vertices of ``{x : A x <= 1}`` for a symmetric spanning ``A``."""
    d = A.shape[1]
    if d == 1:
        m = np.abs(A[:, 0]).max()
        return np.array([[1.0 / m], [-1.0 / m]])
    hull = ConvexHull(A)
    eq = hull.equations
    verts = eq[:, :-1] / (-eq[:, -1:])
    return _unique_rows(verts, decimals=10)


# ---------------------------------------------------------------- LipschitzFin


def validate_metric(metric, tol: float = 1e-12) -> np.ndarray:
    D = np.array(metric, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise NormError(f"metric must be square, got shape {D.shape}")
    if not np.all(np.isfinite(D)) or np.any(D < 0):
        raise NormError("metric entries must be finite and non-negative")
    if np.abs(D - D.T).max(initial=0.0) > tol:
        raise NormError("metric is not symmetric")
    if np.abs(np.diag(D)).max(initial=0.0) > tol:
        raise NormError("metric has a non-zero diagonal")
    m = D.shape[0]
    off = D[~np.eye(m, dtype=bool)]
    if off.size and off.min() <= 0:
        raise NormError("metric has zero distance between distinct points")
    scale = max(1.0, float(D.max(initial=0.0)))
    # d(i,k) <= d(i,j) + d(j,k)
    viol = D[:, None, :] - (D[:, :, None] + D[None, :, :])
    if viol.max(initial=0.0) > tol * scale:
        raise NormError("metric violates the triangle inequality")
    return D


def dil(metric, f) -> float:
    """Lipschitz constant ``max |f(x) - f(y)| / d(x, y)`` over distinct pairs."""
    D = validate_metric(metric)
    f = as_cvec(f, D.shape[0])
    return float(kernels.dil_kernel(D, f))


class LipschitzFin(Norm):
    """Lipschitz norm on a finite metric space.

    ``penalize_basepoint=True``: ``||f|| = dil f + |f(z)|`` with coordinates
    the values at every point.  ``False``: ``||f|| = dil f`` on functions with
    ``f(z) = 0``; coordinates are the values at the other points, in order.
    """

    def __init__(self, metric, basepoint: int = 0, penalize_basepoint: bool = True):
        self.metric = validate_metric(metric)
        self.m = self.metric.shape[0]
        if not 0 <= basepoint < self.m:
            raise NormError(f"basepoint {basepoint} out of range")
        if not penalize_basepoint and self.m < 2:
            raise NormError("pinned Lipschitz space over a single point is trivial")
        self.basepoint = int(basepoint)
        self.penalize = bool(penalize_basepoint)
        self.dim = self.m if self.penalize else self.m - 1
        self.free_points = np.array([i for i in range(self.m) if self.penalize or i != self.basepoint])
        self._pairs = np.array([(i, j) for i in range(self.m) for j in range(i + 1, self.m)], dtype=int)

    def __repr__(self):
        return f"LipschitzFin(m={self.m}, z={self.basepoint}, penalize={self.penalize})"

    def values(self, v) -> np.ndarray:
        """Function values at every point from a coordinate vector."""
        full = np.zeros(self.m, dtype=complex)
        full[self.free_points] = v
        return full

    def _value(self, v):
        f = self.values(v)
        val = kernels.dil_kernel(self.metric, f)
        if self.penalize:
            val += abs(f[self.basepoint])
        return val

    def dual(self):
        return LipschitzDual(self)

    def norming_face(self, e, tol=DEFAULT_TOL, samples: int = 8, seed: int = 0):
        """Sampled norming functionals (real ``e`` only), flagged approximate."""
        e = self._check(e)
        if np.abs(e.imag).max() > 0:
            raise ApproximateOnlyError("norming-face sampling is implemented for real vectors only")
        r = self._value(e)
        if r == 0:
            raise NormError("the zero vector has no norming face")
        dual = self.dual()
        rng = np.random.default_rng(seed)
        funcs = []
        for k in range(samples):
            pert = np.zeros(self.dim) if k == 0 else rng.normal(size=self.dim) * 1e-3
            nu = dual.maximize_over_ball(e.real, pert)
            if nu @ e.real >= r * (1 - 1e-6):
                funcs.append(nu)
        funcs = list(_unique_rows(np.array(funcs), decimals=8))
        return Face(funcs, exact=False, dimension=None, note="sampled by perturbed LP restarts")

    def to_json(self):
        return {"variant": "LipschitzFin", "metric": self.metric.tolist(),
                "basepoint": self.basepoint, "penalize_basepoint": self.penalize}


class LipschitzDual(Norm):
    """Dual norm of a :class:`LipschitzFin`, evaluated by linear programming.

    Real functionals are exact LPs.  Complex functionals need second-order
    cone constraints ``|f(x) - f(y)| <= s d(x, y)`` and go through cvxpy.
    """

    def __init__(self, lip: LipschitzFin):
        self.lip = lip
        self.dim = lip.dim

    def __repr__(self):
        return f"LipschitzDual({self.lip!r})"

    def dual(self):
        return self.lip

    def _full(self, phi):
        full = np.zeros(self.lip.m, dtype=phi.dtype)
        full[self.lip.free_points] = phi
        return full

    def _primal_lp(self, c_full: np.ndarray, extra: np.ndarray | None = None):
        """Maximize ``c . f`` over the real unit ball; returns ``(value, f_full)``."""
        lip = self.lip
        m, P = lip.m, lip._pairs
        nvar = m + 2  # f values, s (dilation bound), u (basepoint bound)
        rows, b = [], []
        if len(P):
            d = lip.metric[P[:, 0], P[:, 1]]
            R = np.zeros((len(P), nvar))
            R[np.arange(len(P)), P[:, 0]] = 1.0
            R[np.arange(len(P)), P[:, 1]] = -1.0
            R[:, m] = -d
            R2 = R.copy()
            R2[:, :m] *= -1.0
            rows += [R, R2]
            b += [np.zeros(len(P)), np.zeros(len(P))]
        z = lip.basepoint
        bounds = [(None, None)] * m + [(0, None), (0, None)]
        if lip.penalize:
            r = np.zeros((3, nvar))
            r[0, z], r[0, m + 1] = 1.0, -1.0
            r[1, z], r[1, m + 1] = -1.0, -1.0
            r[2, m], r[2, m + 1] = 1.0, 1.0
            rows.append(r)
            b.append(np.array([0.0, 0.0, 1.0]))
        else:
            bounds[z] = (0.0, 0.0)
            bounds[m] = (0.0, 1.0)
            bounds[m + 1] = (0.0, 0.0)
        obj = np.zeros(nvar)
        obj[:m] = -c_full
        if extra is not None:
            obj[:m] -= extra
        res = scipy.optimize.linprog(obj, A_ub=np.vstack(rows), b_ub=np.concatenate(b),
                                     bounds=bounds, method="highs")
        if res.status != 0:
            raise NormError(f"Lipschitz dual LP failed: {res.message}")
        f = res.x[:m]
        return float(c_full @ f), f

    def maximize_over_ball(self, e_coords: np.ndarray, perturbation: np.ndarray):
        """A maximizer (as a functional) of ``<e, nu>`` over the dual ball.

        Solved through the representation LP so the result is a functional.
        """
        lip = self.lip
        e_full = np.zeros(lip.m)
        e_full[lip.free_points] = e_coords
        pert_full = np.zeros(lip.m)
        pert_full[lip.free_points] = perturbation
        # The norming functionals of e are the maximizers over the dual ball;
        # the dual ball is {sum a_k (d_x - d_y) + b d_z : cost <= 1}.
        P = lip._pairs
        K = len(P)
        z = lip.basepoint
        d = lip.metric[P[:, 0], P[:, 1]] if K else np.zeros(0)
        # variables: a+ (K), a- (K), b+, b-
        nvar = 2 * K + 2
        # functional at each point as a linear map of the variables
        Mmap = np.zeros((lip.m, nvar))
        if K:
            Mmap[P[:, 0], np.arange(K)] += 1.0
            Mmap[P[:, 1], np.arange(K)] -= 1.0
            Mmap[P[:, 0], K + np.arange(K)] -= 1.0
            Mmap[P[:, 1], K + np.arange(K)] += 1.0
        Mmap[z, 2 * K] += 1.0
        Mmap[z, 2 * K + 1] -= 1.0
        obj = -((e_full + pert_full) @ Mmap)
        rows = [np.concatenate([d, d, [0.0, 0.0]])]
        if lip.penalize:
            rows.append(np.concatenate([np.zeros(2 * K), [1.0, 1.0]]))
        res = scipy.optimize.linprog(obj, A_ub=np.array(rows), b_ub=np.ones(len(rows)),
                                     bounds=[(0, None)] * nvar, method="highs")
        if res.status != 0:
            raise NormError(f"Lipschitz face LP failed: {res.message}")
        nu_full = Mmap @ res.x
        return nu_full[lip.free_points]

    def _value(self, phi):
        if np.all(phi.imag == 0):
            return self._primal_lp(self._full(phi.real))[0]
        return self._socp_value(phi)

    def _socp_value(self, phi):
        import cvxpy as cp

        lip = self.lip
        m, P = lip.m, lip._pairs
        c_full = self._full(phi)
        f = cp.Variable(m, complex=True)
        s = cp.Variable(nonneg=True)
        cons = []
        if len(P):
            d = lip.metric[P[:, 0], P[:, 1]]
            cons.append(cp.abs(f[P[:, 0]] - f[P[:, 1]]) <= s * d)
        z = lip.basepoint
        if lip.penalize:
            u = cp.Variable(nonneg=True)
            cons += [cp.abs(f[z]) <= u, s + u <= 1]
        else:
            cons += [f[z] == 0, s <= 1]
        prob = cp.Problem(cp.Maximize(cp.real(c_full @ f)), cons)
        prob.solve(solver=cp.CLARABEL)
        if prob.status not in ("optimal", "optimal_inaccurate"):
            raise NormError(f"Lipschitz dual cone program failed: {prob.status}")
        return float(prob.value)

    def line_min(self, e, f):
        """Exact ``min_t ||e + t f||`` over real ``t`` for real functionals.

        Uses the transport representation of the dual norm:
        ``||phi|| = min max(sum d_k |a_k|, |b|)`` over
        ``phi = sum a_k (delta_x - delta_y) + b delta_z`` (penalized case), or
        ``min sum d_k |a_k|`` with a free basepoint mass (pinned case).
        Returns ``(t, value)``.
        """
        lip = self.lip
        e_full = self._full(np.asarray(e).real)
        f_full = self._full(np.asarray(f).real)
        P = lip._pairs
        K = len(P)
        z = lip.basepoint
        d = lip.metric[P[:, 0], P[:, 1]] if K else np.zeros(0)
        # variables: a+ (K), a- (K), b+, b-, t+, t-, s
        nvar = 2 * K + 5
        Aeq = np.zeros((lip.m, nvar))
        if K:
            Aeq[P[:, 0], np.arange(K)] += 1.0
            Aeq[P[:, 1], np.arange(K)] -= 1.0
            Aeq[P[:, 0], K + np.arange(K)] -= 1.0
            Aeq[P[:, 1], K + np.arange(K)] += 1.0
        Aeq[z, 2 * K] += 1.0
        Aeq[z, 2 * K + 1] -= 1.0
        Aeq[:, 2 * K + 2] = -f_full
        Aeq[:, 2 * K + 3] = f_full
        cost_row = np.concatenate([d, d, [0, 0, 0, 0, -1.0]])
        rows = [cost_row]
        if lip.penalize:
            rows.append(np.concatenate([np.zeros(2 * K), [1.0, 1.0, 0, 0, -1.0]]))
        obj = np.zeros(nvar)
        obj[-1] = 1.0
        res = scipy.optimize.linprog(obj, A_ub=np.array(rows), b_ub=np.zeros(len(rows)),
                                     A_eq=Aeq, b_eq=e_full, bounds=[(0, None)] * nvar,
                                     method="highs")
        if res.status != 0:
            raise NormError(f"Lipschitz line-minimization LP failed: {res.message}")
        t = res.x[2 * K + 2] - res.x[2 * K + 3]
        return float(t), float(res.fun)

    def to_json(self):
        return {"variant": "LipschitzDual", "of": self.lip.to_json()}


# --------------------------------------------------------------------- BlockSum


@dataclass(frozen=True)
class OuterLp:
    """Outer combiner ``rho(a) = ||(s_i a_i)_i||_p`` with positive scales ``s``.

    ``weights`` follow the weighted-sum convention ``rho(a)^p = sum w_i a_i^p``
    (``s_i = w_i^(1/p)``); for ``p = inf`` the weights multiply directly.
    """

    p: float
    weights: tuple | None = None

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1.0:
            raise NormError(f"combiner exponent must be in [1, inf], got {p}")
        object.__setattr__(self, "p", p)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if np.any(w <= 0) or not np.all(np.isfinite(w)):
                raise NormError("combiner weights must be positive")
            object.__setattr__(self, "weights", tuple(w.tolist()))

    def _scales(self, n):
        if self.weights is None:
            return np.ones(n)
        w = np.asarray(self.weights)
        if len(w) != n:
            raise DimensionMismatch(f"{len(w)} weights for {n} blocks")
        return w if math.isinf(self.p) else w ** (1.0 / self.p)

    def __call__(self, a) -> float:
        a = np.asarray(a, dtype=float)
        return float(np.linalg.norm(self._scales(len(a)) * a, self.p))

    def dual_for(self, n) -> "OuterLp":
        p = self.p
        q = math.inf if p == 1.0 else (1.0 if math.isinf(p) else p / (p - 1.0))
        if self.weights is None:
            return OuterLp(q)
        s_dual = 1.0 / self._scales(n)
        w = s_dual if math.isinf(q) else s_dual ** q
        return OuterLp(q, tuple(w.tolist()))

    def norming(self, a) -> np.ndarray:
        """Coefficients ``c >= 0`` with ``rho*(c) = 1`` and ``c . a = rho(a)``."""
        a = np.asarray(a, dtype=float)
        s = self._scales(len(a))
        x = s * a
        r = np.linalg.norm(x, self.p)
        if math.isinf(self.p):
            nu = np.zeros_like(x)
            nu[int(np.argmax(x))] = 1.0
        elif self.p == 1.0:
            nu = np.ones_like(x)
        else:
            nu = (x / r) ** (self.p - 1.0)
        return s * nu

    def to_json(self):
        p = "inf" if math.isinf(self.p) else self.p
        if self.weights is None:
            return {"variant": "OuterLp", "p": p}
        return {"variant": "WeightedOuterLp", "p": p, "weights": list(self.weights)}


class BlockSum(Norm):
    """``||(v_1, ..., v_n)|| = rho(||v_1||_1, ..., ||v_n||_n)``."""

    def __init__(self, blocks, combiner: OuterLp):
        blocks = list(blocks)
        if not blocks:
            raise NormError("BlockSum needs at least one block")
        fields = {b.field for b in blocks}
        if len(fields) != 1:
            raise NormError("BlockSum blocks must share a scalar field")
        self.field = fields.pop()
        self.blocks = blocks
        self.combiner = combiner
        combiner._scales(len(blocks))
        self.sizes = [b.dim for b in blocks]
        self.offsets = np.concatenate([[0], np.cumsum(self.sizes)])
        self.dim = int(self.offsets[-1])
        self._hilbert = self._reduce_to_hilbert()

    def __repr__(self):
        return f"BlockSum({self.blocks!r}, {self.combiner!r})"

    def split(self, v):
        return [v[self.offsets[i]:self.offsets[i + 1]] for i in range(len(self.blocks))]

    @property
    def conj_invariant(self):
        return all(b.conj_invariant for b in self.blocks)

    def _reduce_to_hilbert(self):
        if self.combiner.p != 2.0 or self.field != "complex":
            return None
        grams = []
        for b in self.blocks:
            if isinstance(b, HilbertGram):
                grams.append(b.G)
            elif isinstance(b, Lp) and b.p == 2.0:
                grams.append(np.eye(b.dim))
            else:
                return None
        w = self.combiner._scales(len(self.blocks)) ** 2
        return HilbertGram(scipy.linalg.block_diag(*[wi * g for wi, g in zip(w, grams)]))

    def as_hilbert(self) -> HilbertGram | None:
        """The equivalent :class:`HilbertGram`, when every block is Euclidean and rho is l2."""
        return self._hilbert

    def _value(self, v):
        if self._hilbert is not None:
            return self._hilbert._value(v)
        return self.combiner([b._value(p) for b, p in zip(self.blocks, self.split(v))])

    def kernel_ctx(self):
        return None if self._hilbert is None else self._hilbert.kernel_ctx()

    def dual(self):
        return BlockSum([b.dual() for b in self.blocks], self.combiner.dual_for(len(self.blocks)))

    def norming_face(self, e, tol=DEFAULT_TOL, samples: int = 8, seed: int = 0):
        e = self._check(e)
        if self._hilbert is not None:
            return self._hilbert.norming_face(e, tol)
        parts = self.split(e)
        a = np.array([b._value(p) for b, p in zip(self.blocks, parts)])
        if a.max() == 0:
            raise NormError("the zero vector has no norming face")
        c = self.combiner.norming(a)
        rng = np.random.default_rng(seed)
        block_funcs = []
        exact = True
        for b, p, ai, ci in zip(self.blocks, parts, a, c):
            if ai > tol * a.max():
                fb = b.norming_face(p, tol)
                exact &= fb.exact and len(fb.functionals) == 1
                block_funcs.append([ci * nu for nu in fb.functionals])
            elif ci == 0:
                block_funcs.append([np.zeros(b.dim, dtype=complex)])
            else:
                # any functional of dual norm <= c_i norms the zero block
                exact = False
                db = b.dual()
                opts = []
                for _ in range(samples):
                    g = rng.normal(size=b.dim) + (0 if b.field == "real" else 1j * rng.normal(size=b.dim))
                    opts.append(ci * g / db(g))
                block_funcs.append(opts)
        base = [bf[0] for bf in block_funcs]
        funcs = [np.concatenate(base)]
        for i, bf in enumerate(block_funcs):
            for nu in bf[1:]:
                alt = list(base)
                alt[i] = nu
                funcs.append(np.concatenate(alt))
        return Face(funcs, exact=exact, dimension=0 if exact else None,
                    note="" if exact else "sampled from block faces")

    def sphere_face_dimension(self, e, tol=DEFAULT_TOL):
        e = self._require_sphere(e, tol)
        parts = self.split(e)
        a = np.array([b._value(p) for b, p in zip(self.blocks, parts)])
        nz = a > tol * a.max()

        def block_sfd(b, p, r):
            return b.sphere_face_dimension(p / r, tol=max(tol, 1e-12) * 10)

        p = self.combiner.p
        if 1.0 < p < math.inf:
            # strictly convex rho: block radii are constant on convex subsets of the sphere
            return sum(block_sfd(b, q, r) for b, q, r, k in zip(self.blocks, parts, a, nz) if k)
        if p == 1.0:
            total = -1
            for b, q, r, k in zip(self.blocks, parts, a, nz):
                total += 1 + (block_sfd(b, q, r) if k else b.max_sphere_face_dimension())
            return total
        # rho = max: fix one block on its sphere, the rest range over their balls
        s = self.combiner._scales(len(self.blocks))
        x = s * a
        best = 0
        for i, (b, q, r) in enumerate(zip(self.blocks, parts, a)):
            if x[i] >= x.max() * (1 - tol):
                others = sum(self.blocks[j].real_dim for j in range(len(self.blocks)) if j != i)
                best = max(best, block_sfd(b, q, r) + others)
        return best

    def max_sphere_face_dimension(self):
        p = self.combiner.p
        dims = [b.max_sphere_face_dimension() for b in self.blocks]
        if 1.0 < p < math.inf:
            return sum(dims)
        if p == 1.0:
            return sum(d + 1 for d in dims) - 1
        rd = [b.real_dim for b in self.blocks]
        return max(dims[i] + sum(rd) - rd[i] for i in range(len(dims)))

    def to_json(self):
        return {"variant": "BlockSum", "blocks": [b.to_json() for b in self.blocks],
                "combiner": self.combiner.to_json()}


# ------------------------------------------------------------------ module API


def norm_eval(spec: Norm, v) -> float:
    return spec(v)


def dual_norm_eval(spec: Norm, phi, tol: float = DEFAULT_TOL) -> float:
    return spec.dual_value(phi, tol)


def support_face(spec: Norm, e, tol: float = DEFAULT_TOL) -> Face:
    e = as_cvec(e, spec.dim)
    if not np.any(e):
        raise NormError("support_face of the zero vector")
    return spec.norming_face(e, tol)


def face_dimension(spec: Norm, e, tol: float = DEFAULT_TOL) -> int:
    if not isinstance(spec, (Lp, HilbertGram, Polyhedral)):
        if isinstance(spec, BlockSum) and spec.as_hilbert() is not None:
            return spec.as_hilbert().face_dimension(e, tol)
        raise ApproximateOnlyError(
            f"exact face dimension is available for Lp, HilbertGram and Polyhedral; "
            f"use support_face sampling for {type(spec).__name__}"
        )
    return spec.face_dimension(e, tol)


def sphere_face_dimension(spec: Norm, e, tol: float = DEFAULT_TOL) -> int:
    return spec.sphere_face_dimension(e, tol)


# ----------------------------------------------------------------------- JSON


def complex_matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def complex_matrix_from_json(data) -> np.ndarray:
    """Rows of entries that are numbers or ``[re, im]`` pairs (mixing allowed)."""
    if not isinstance(data, (list, tuple)) or not data:
        raise NormError("matrix must be a non-empty list of rows")
    rows = [complex_vector_from_json(row) for row in data]
    if len({len(r) for r in rows}) != 1:
        raise NormError("matrix rows have different lengths")
    return np.array(rows, dtype=complex)


def complex_vector_to_json(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def complex_vector_from_json(data) -> np.ndarray:
    if not isinstance(data, (list, tuple)):
        raise NormError("vector must be a list")
    out = []
    for z in data:
        if isinstance(z, (list, tuple)):
            if len(z) != 2:
                raise NormError("complex entries must be [re, im] pairs")
            out.append(complex(float(z[0]), float(z[1])))
        elif isinstance(z, (int, float)) and not isinstance(z, bool):
            out.append(complex(float(z)))
        else:
            raise NormError(f"bad vector entry {z!r}")
    return np.array(out, dtype=complex)


def _p_from_json(p):
    return math.inf if p in ("inf", "Infinity", None) else float(p)


def combiner_from_json(d: dict) -> OuterLp:
    variant = d.get("variant")
    if variant == "OuterLp":
        return OuterLp(_p_from_json(d["p"]))
    if variant == "WeightedOuterLp":
        return OuterLp(_p_from_json(d["p"]), tuple(d["weights"]))
    raise NormError(f"unknown combiner variant {variant!r}")


def norm_from_json(d: dict) -> Norm:
    try:
        variant = d["variant"]
    except (KeyError, TypeError) as exc:
        raise NormError("norm description needs a 'variant' field") from exc
    if variant == "Lp":
        return Lp(_p_from_json(d["p"]), int(d["dim"]))
    if variant == "HilbertGram":
        return HilbertGram(complex_matrix_from_json(d["G"]))
    if variant == "Polyhedral":
        return Polyhedral(d["facets"])
    if variant == "LipschitzFin":
        return LipschitzFin(d["metric"], int(d.get("basepoint", 0)),
                            bool(d.get("penalize_basepoint", True)))
    if variant == "LipschitzDual":
        lip = norm_from_json(d["of"])
        if not isinstance(lip, LipschitzFin):
            raise NormError("LipschitzDual must wrap a LipschitzFin norm")
        return lip.dual()
    if variant == "BlockSum":
        return BlockSum([norm_from_json(b) for b in d["blocks"]], combiner_from_json(d["combiner"]))
    raise NormError(f"unknown norm variant {variant!r}")
