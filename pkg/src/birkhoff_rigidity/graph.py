"""The Birkhoff graph of a function-space model.

Vertices are sample points.  Two points are joined when their point
evaluations fail to be Birkhoff orthogonal (in the dual coefficient norm) in
at least one direction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .birkhoff import SEARCH_FRACTION, Verdict, birkhoff_test, classify
from .function_space import FunctionSpaceModel, ModelError, is_1_independent

DEFAULT_TOL = 1e-7

_PALETTE = (
    "lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
    "lightcyan", "wheat", "thistle", "aquamarine",
)


class NullEvaluationError(ModelError):
    """Some point evaluations vanish; restrict the model to the other points first."""


class DisjointSet:
    """Union-find over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        a, b = self.find(i), self.find(j)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return True

    def groups(self) -> list:
        """Classes as sorted index lists, ordered by smallest member."""
        out = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return sorted(out.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class PairMargin:
    """Both directional deficits for a pair ``(x, y)``.

    ``xy`` is the deficit of ``x_F`` against the line through ``y_F``, so
    ``x_F`` is orthogonal to ``y_F`` when it is at most ``tol``.
    """

    xy: float
    yx: float
    verdict_xy: Verdict
    verdict_yx: Verdict

    @property
    def edge(self) -> bool:
        # indeterminate counts as non-orthogonal
        return not (self.verdict_xy is Verdict.ORTHOGONAL and self.verdict_yx is Verdict.ORTHOGONAL)

    @property
    def soft(self) -> bool:
        """Edge present only because a margin fell inside the indeterminate band."""
        return self.edge and Verdict.NOT_ORTHOGONAL not in (self.verdict_xy, self.verdict_yx)

    def to_json(self) -> dict:
        return {"xy": self.xy, "yx": self.yx,
                "verdict_xy": self.verdict_xy.value, "verdict_yx": self.verdict_yx.value}


@dataclass(frozen=True)
class BirkhoffGraph:
    vertices: tuple
    edges: frozenset
    components: tuple
    margins: dict
    tol: float

    @property
    def soft_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if self.margins[e].soft)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    def adjacent(self, x, y) -> bool:
        return frozenset((x, y)) in self.edges if x != y else False

    def component_of(self, x) -> int:
        for k, comp in enumerate(self.components):
            if x in comp:
                return k
        raise KeyError(x)

    def margin(self, x, y) -> tuple:
        """``(deficit x->y, deficit y->x)`` for the pair."""
        m = self.margins[frozenset((x, y))]
        if self.vertices.index(x) < self.vertices.index(y):
            return m.xy, m.yx
        return m.yx, m.xy

    def sorted_edges(self) -> list:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted((tuple(sorted(e, key=pos.__getitem__)) for e in self.edges),
                      key=lambda p: (pos[p[0]], pos[p[1]]))

    def to_json(self) -> dict:
        pos = {v: i for i, v in enumerate(self.vertices)}
        margins = []
        for i, x in enumerate(self.vertices):
            for y in self.vertices[i + 1:]:
                rec = self.margins[frozenset((x, y))].to_json()
                margins.append({"pair": [_jsonable(x), _jsonable(y)], **rec})
        return {
            "vertices": [_jsonable(v) for v in self.vertices],
            "edges": [[_jsonable(a), _jsonable(b)] for a, b in self.sorted_edges()],
            "soft_edges": [[_jsonable(a), _jsonable(b)] for a, b in self.sorted_edges()
                           if self.margins[frozenset((a, b))].soft],
            "components": [[_jsonable(v) for v in sorted(c, key=pos.__getitem__)]
                           for c in self.components],
            "margins": margins,
            "tol": self.tol,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def _margin_matrix(F: FunctionSpaceModel, tol: float) -> np.ndarray:
    """``D[i, j]`` = deficit of evaluation ``i`` against the line of evaluation ``j``."""
    view = F.dual_view()
    rows = np.ascontiguousarray(F.basis)
    m = F.m
    ctx = view.kernel_ctx()
    if ctx is not None:
        has_imag = bool(np.any(rows.imag))
        complex_t = view.field == "complex" and (has_imag or not view.conj_invariant)
        if view.field == "real":
            rows = np.ascontiguousarray(np.array([view._check(r) for r in rows]))
        mins = kernels.pairwise_kernel(ctx, rows, complex_t, tol * SEARCH_FRACTION / 4.0)
        norms = np.diag(mins).copy()
        D = 1.0 - mins / norms[:, None]
        np.fill_diagonal(D, 0.0)
        return np.maximum(D, 0.0)
    D = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if i != j:
                D[i, j] = birkhoff_test(view, rows[i], rows[j], tol).deficit
    return D


def build_graph(F: FunctionSpaceModel, tol: float = DEFAULT_TOL) -> BirkhoffGraph:
    """Birkhoff graph of ``F``; every point evaluation must be non-zero."""
    ok, bad = is_1_independent(F)
    if not ok:
        raise NullEvaluationError(
            f"point evaluations vanish at {bad!r}; restrict the model to non-null points"
        )
    D = _margin_matrix(F, tol)
    ids = F.ids
    ds = DisjointSet(F.m)
    edges, margins = set(), {}
    for i in range(F.m):
        for j in range(i + 1, F.m):
            pm = PairMargin(float(D[i, j]), float(D[j, i]),
                            classify(D[i, j], tol), classify(D[j, i], tol))
            key = frozenset((ids[i], ids[j]))
            margins[key] = pm
            if pm.edge:
                edges.add(key)
                ds.union(i, j)
    comps = tuple(tuple(ids[i] for i in g) for g in ds.groups())
    return BirkhoffGraph(tuple(ids), frozenset(edges), comps, margins, tol)


def connected_components(g: BirkhoffGraph) -> list:
    """Partition of the vertices, each class in vertex order, classes by first member."""
    pos = {v: i for i, v in enumerate(g.vertices)}
    ds = DisjointSet(len(g.vertices))
    for e in g.edges:
        a, b = tuple(e)
        ds.union(pos[a], pos[b])
    return [[g.vertices[i] for i in grp] for grp in ds.groups()]


@dataclass(frozen=True)
class OpennessProbe:
    point: object
    radius: float
    near_points: tuple
    adjacent: tuple
    adjacent_fraction: float

    @property
    def passed(self) -> bool:
        return self.adjacent_fraction == 1.0


def neighborhood_openness_probe(F: FunctionSpaceModel, x, radius: float,
                                tol: float = DEFAULT_TOL,
                                graph: BirkhoffGraph | None = None) -> OpennessProbe:
    """Which points within ``radius`` of ``x`` are Birkhoff-adjacent to ``x``."""
    D = F.phase.metric
    if D is None:
        raise ModelError("the phase space has no metric")
    i = F.phase.index(x)
    g = graph if graph is not None else build_graph(F, tol)
    near = tuple(y for j, y in enumerate(F.ids) if j != i and D[i, j] <= radius)
    adj = tuple(y for y in near if g.adjacent(x, y))
    frac = 1.0 if not near else len(adj) / len(near)
    return OpennessProbe(x, float(radius), near, adj, frac)


def _dot_id(x) -> str:
    label = ":".join(map(str, x)) if isinstance(x, tuple) else str(x)
    return json.dumps(label)


def export_dot(g: BirkhoffGraph, name: str = "birkhoff") -> str:
    """Graphviz text; nodes are filled by component, soft edges dashed."""
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for k, comp in enumerate(g.components):
        color = _PALETTE[k % len(_PALETTE)]
        for v in comp:
            lines.append(f"  {_dot_id(v)} [label={_dot_id(v)}, fillcolor={color}];")
    for a, b in g.sorted_edges():
        style = " [style=dashed]" if g.margins[frozenset((a, b))].soft else ""
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
