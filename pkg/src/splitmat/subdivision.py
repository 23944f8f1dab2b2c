"""
Regular subdivisions of hypersimplices.

A lift h on the vertices of Delta(k, n) induces the subdivision whose maximal
cells are the lower faces of conv{(e_v, h(v))}. Since every vertex satisfies
sum(x) = k, affine functions on Delta(k, n) are exactly the linear functions
v -> a.e_v, and the maximal cells correspond to the vertices of

    Q = {a in Q^n : a.e_v <= h(v) for every vertex v}:

the cell of a vertex a of Q is its tight set, and ``a`` is the supporting
certificate. Two cells are adjacent exactly when their vertices of Q span an
edge, which is followed by walking from a vertex along the outer normal of a
facet of its cell until a new constraint becomes tight.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

import networkx as nx

from splitmat import linalg, lp
from splitmat.codec import codec, format_subset, iter_elements
from splitmat.errors import (
    CertificateFailure,
    DegenerateParameters,
    ExchangeViolation,
    LimitExceeded,
    NotAMatroid,
)
from splitmat.lifts import LiftVector, corank_vector, predicted_ray_cells, series_free_lift
from splitmat.logging import logger
from splitmat.matroid import Matroid, validate_masks
from splitmat.reports import RayReport, SubdivisionReport
from splitmat.split import split_flacets

DEFAULT_MAX_VERTICES = 1000

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class SecondaryConeInfo:
    solution_dim: int
    lineality_dim: int

    @property
    def cone_dim(self) -> int:
        return self.solution_dim - self.lineality_dim

    @property
    def is_ray(self) -> bool:
        return self.cone_dim == 1


@dataclass
class Subdivision:
    k: int
    n: int
    cells: list[frozenset[int]]
    dual_edges: list[tuple[int, int]]
    certificates: list[Vector] = field(default_factory=list)

    @property
    def masks(self) -> tuple[int, ...]:
        return codec(self.n, self.k).masks

    def cell_masks(self, index: int) -> list[int]:
        masks = self.masks
        return [masks[v] for v in sorted(self.cells[index])]

    def cell_set(self) -> set[frozenset[int]]:
        return set(self.cells)

    @cached_property
    def dual_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.cells)))
        graph.add_edges_from(self.dual_edges)
        return graph

    def render_cell(self, index: int) -> list[str]:
        return [format_subset(mask, self.n) for mask in self.cell_masks(index)]

    def export(self) -> str:
        return export_text(
            self.k,
            self.n,
            [self.render_cell(i) for i in range(len(self.cells))],
            self.dual_edges,
        )


def export_text(
    k: int, n: int, cells: Sequence[Sequence[str]], edges: Iterable[tuple[int, int]]
) -> str:
    """Header ``k n num_cells``, one line per cell, then one line per dual edge."""
    lines = [f"{k} {n} {len(cells)}"]
    lines += [" ".join(cell) for cell in cells]
    lines += [f"{a} {b}" for a, b in edges]
    return "\n".join(lines) + "\n"


def _dot(a: Sequence[Fraction], mask: int) -> Fraction:
    return sum((a[e - 1] for e in iter_elements(mask)), Fraction(0))


def _indicator_rows(masks: Iterable[int], n: int) -> list[list[int]]:
    return [[mask >> i & 1 for i in range(n)] for mask in masks]


class _Engine:
    """Vertex walk on Q for one lift."""

    def __init__(self, k: int, n: int, heights: Sequence[Fraction]):
        self.k = k
        self.n = n
        self.heights = list(heights)
        self.masks = codec(n, k).masks

    def tight(self, a: Sequence[Fraction]) -> frozenset[int]:
        return frozenset(
            v for v, mask in enumerate(self.masks) if _dot(a, mask) == self.heights[v]
        )

    def rank(self, vertices: Iterable[int]) -> int:
        return linalg.rank(_indicator_rows((self.masks[v] for v in vertices), self.n), self.n)

    def seed(self) -> list[Fraction]:
        """Supporting function at a point pushed from vertex 0 toward the barycenter."""
        floor = min(self.heights)
        shifted = [h - floor for h in self.heights]
        half = Fraction(1, 2)
        start = self.masks[0]
        point = [
            (1 - half) * (start >> i & 1) + half * Fraction(self.k, self.n)
            for i in range(self.n)
        ]
        result = lp.linprog(
            [-p for p in point],
            A_ub=_indicator_rows(self.masks, self.n),
            b_ub=shifted,
            free=range(self.n),
        )
        if not result.success:
            raise CertificateFailure(f"seed LP ended as {result.status.value}")
        return [x + floor / self.k for x in result.x]

    def push_to_vertex(self, a: list[Fraction]) -> list[Fraction]:
        """Move inside Q until n linearly independent constraints are tight."""
        tight = self.tight(a)
        while self.rank(tight) < self.n:
            rows = _indicator_rows((self.masks[v] for v in tight), self.n)
            direction = linalg.nullspace(rows, self.n)[0]
            step = self._step(a, direction, tight)
            if step is None:
                direction = [-x for x in direction]
                step = self._step(a, direction, tight)
            if step is None:
                raise CertificateFailure("no blocking constraint along a line of Q")
            a = [x + step * y for x, y in zip(a, direction)]
            tight = self.tight(a)
        return a

    def _step(self, a, direction, tight) -> Fraction | None:
        best = None
        for v, mask in enumerate(self.masks):
            if v in tight:
                continue
            rate = _dot(direction, mask)
            if rate > 0:
                step = (self.heights[v] - _dot(a, mask)) / rate
                if best is None or step < best:
                    best = step
        return best

    def facets(self, cell: frozenset[int]) -> list[tuple[int, int]]:
        """
        Facets of the cell among the inequalities sum_{i in S} x_i <= gamma,
        as (S mask, gamma) pairs. For matroid polytopes these are all facets.
        """
        found: dict[frozenset[int], tuple[int, int]] = {}
        members = [(v, self.masks[v]) for v in cell]
        for subset in range(1, (1 << self.n) - 1):
            counts = [(v, (mask & subset).bit_count()) for v, mask in members]
            gamma = max(c for _, c in counts)
            face = frozenset(v for v, c in counts if c == gamma)
            if len(face) == len(cell) or face in found:
                continue
            found[face] = (subset, gamma)
        return [
            inequality
            for face, inequality in found.items()
            if self.rank(face) == self.n - 1
        ]

    def walk(self, a: Sequence[Fraction], cell: frozenset[int], subset: int, gamma: int):
        """Follow the edge of Q leaving ``a`` through the given facet; None on the boundary."""
        shift = Fraction(gamma, self.k)
        direction = [Fraction(subset >> i & 1) - shift for i in range(self.n)]
        step = self._step(a, direction, cell)
        if step is None:
            return None
        return [x + step * y for x, y in zip(a, direction)]


def regular_subdivision(
    k: int, n: int, lift: LiftVector | Sequence, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Subdivision:
    if not 0 < k < n:
        raise DegenerateParameters(f"Delta({k},{n}) is a single point")
    if comb(n, k) > max_vertices:
        raise LimitExceeded("hypersimplex vertices", comb(n, k), max_vertices)
    if not isinstance(lift, LiftVector):
        lift = LiftVector.of(k, n, lift)
    if (lift.k, lift.n) != (k, n):
        raise DegenerateParameters(
            f"lift lives on Delta({lift.k},{lift.n}), not Delta({k},{n})"
        )

    engine = _Engine(k, n, lift.heights)
    start = engine.push_to_vertex(engine.seed())

    cells: list[frozenset[int]] = []
    certificates: list[Vector] = []
    index: dict[frozenset[int], int] = {}
    edges: set[tuple[int, int]] = set()

    def register(a: list[Fraction]) -> tuple[int, bool]:
        cell = engine.tight(a)
        if cell in index:
            return index[cell], False
        if engine.rank(cell) != n:
            raise CertificateFailure("walk ended at a point that is not a vertex of Q")
        index[cell] = len(cells)
        cells.append(cell)
        certificates.append(tuple(a))
        return index[cell], True

    first, _ = register(start)
    queue = deque([first])
    while queue:
        current = queue.popleft()
        a, cell = certificates[current], cells[current]
        for subset, gamma in engine.facets(cell):
            landing = engine.walk(a, cell, subset, gamma)
            if landing is None:
                continue
            neighbor, new = register(landing)
            face = {v for v in cell if (engine.masks[v] & subset).bit_count() == gamma}
            if not face <= cells[neighbor]:
                raise CertificateFailure(
                    f"cell {neighbor} does not contain the ridge it was reached through"
                )
            edges.add((min(current, neighbor), max(current, neighbor)))
            if new:
                queue.append(neighbor)
        logger.debug("cell %s done, %s cells found so far", current, len(cells))

    subdivision = Subdivision(
        k=k,
        n=n,
        cells=cells,
        dual_edges=sorted(edges),
        certificates=certificates,
    )
    verify_certificates(subdivision, lift)
    logger.debug("Delta(%s,%s) subdivided into %s cells", k, n, len(cells))
    return subdivision


def verify_certificates(subdivision: Subdivision, lift: LiftVector):
    """Check equality on each cell, strict inequality off it, and full coverage."""
    covered: set[int] = set()
    masks = subdivision.masks
    for i, (cell, a) in enumerate(zip(subdivision.cells, subdivision.certificates)):
        for v, mask in enumerate(masks):
            value = _dot(a, mask)
            if (v in cell and value != lift[v]) or (v not in cell and value >= lift[v]):
                raise CertificateFailure(f"certificate of cell {i} fails at vertex {v}")
        covered |= cell
    if len(covered) != len(masks):
        raise CertificateFailure("cells do not cover every vertex")
    if not nx.is_connected(subdivision.dual_graph):
        raise CertificateFailure("dual graph is not connected")


def cell_to_matroid(k: int, n: int, cell: Iterable[int]) -> Matroid:
    masks = codec(n, k).masks
    try:
        return validate_masks(n, k, (masks[v] for v in cell))
    except ExchangeViolation as err:
        raise NotAMatroid((err.a, err.b)) from err


def cell_matroids(subdivision: Subdivision) -> list[Matroid | None]:
    found = []
    for cell in subdivision.cells:
        try:
            found.append(cell_to_matroid(subdivision.k, subdivision.n, cell))
        except NotAMatroid:
            found.append(None)
    return found


def is_matroid_subdivision(subdivision: Subdivision) -> bool:
    return all(m is not None for m in cell_matroids(subdivision))


def tropical_linear_space(subdivision: Subdivision) -> list[int]:
    """Indices of the maximal cells whose matroids have no loops."""
    full = (1 << subdivision.n) - 1
    found = []
    for i in range(len(subdivision.cells)):
        union = 0
        for mask in subdivision.cell_masks(i):
            union |= mask
        if union == full:
            found.append(i)
    return found


def secondary_cone_dimension(subdivision: Subdivision) -> SecondaryConeInfo:
    k, n = subdivision.k, subdivision.n
    if not 0 < k < n:
        raise DegenerateParameters(f"Delta({k},{n}) has no secondary fan")
    count = len(subdivision.cells)
    owners: dict[int, list[int]] = {}
    for c, cell in enumerate(subdivision.cells):
        for v in cell:
            owners.setdefault(v, []).append(c)
    rows = []
    masks = subdivision.masks
    for v, cs in owners.items():
        indicator = [masks[v] >> i & 1 for i in range(n)]
        for other in cs[1:]:
            row = [0] * (count * n)
            row[cs[0] * n : cs[0] * n + n] = indicator
            row[other * n : other * n + n] = [-x for x in indicator]
            rows.append(row)
    solution_dim = count * n - linalg.rank(rows, count * n)
    return SecondaryConeInfo(solution_dim=solution_dim, lineality_dim=n)


def subdivision_report(subdivision: Subdivision) -> SubdivisionReport:
    cone = secondary_cone_dimension(subdivision)
    return SubdivisionReport(
        k=subdivision.k,
        n=subdivision.n,
        num_cells=len(subdivision.cells),
        cells=[subdivision.render_cell(i) for i in range(len(subdivision.cells))],
        dual_edges=subdivision.dual_edges,
        is_matroid_subdivision=is_matroid_subdivision(subdivision),
        tropical_cells=tropical_linear_space(subdivision),
        solution_dim=cone.solution_dim,
        cone_dim=cone.cone_dim,
    )


def _basis_indices(matroid: Matroid) -> frozenset[int]:
    index = matroid.codec.index
    return frozenset(index(mask) for mask in matroid.basis_masks)


def verify_ray(
    matroid: Matroid, max_vertices: int = DEFAULT_MAX_VERTICES, line: int | None = None
) -> RayReport:
    predicted = predicted_ray_cells(matroid)
    lifted = series_free_lift(matroid)
    k, n = lifted.d, lifted.n
    subdivision = regular_subdivision(k, n, corank_vector(lifted), max_vertices)

    expected = {_basis_indices(m) for m in predicted}
    computed = subdivision.cell_set()
    cone = secondary_cone_dimension(subdivision)
    expected_count = len(split_flacets(matroid)) + 2
    masks = codec(n, k).masks

    def render(cells: set[frozenset[int]]) -> list[list[str]]:
        return sorted(
            [format_subset(masks[v], n) for v in sorted(cell)] for cell in cells
        )

    cells_match = expected == computed
    count_ok = len(subdivision.cells) == expected_count
    report = RayReport(
        d=matroid.d,
        n=matroid.n,
        passed=cells_match and count_ok and cone.is_ray,
        num_cells=len(subdivision.cells),
        expected_cells=expected_count,
        cells_match=cells_match,
        cell_count_ok=count_ok,
        cone_dim=cone.cone_dim,
        cone_ok=cone.is_ray,
        missing_cells=render(expected - computed),
        unexpected_cells=render(computed - expected),
        line=line,
    )
    logger.debug("ray check for %r: %s", matroid, "PASS" if report.passed else "FAIL")
    return report
