"""Diagram surgeries from the node-count estimates.

Each operation returns a :class:`TransformReceipt` holding both diagrams and
the measured change of the relevant metric.  The guaranteed inequality is
checked at runtime and a violation raises :class:`InternalContradiction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diagram import (
    N,
    P,
    SIGN_CHAR,
    NewtonDiagram,
    SiteSpec,
    add,
    compositions,
    minimize_signs,
    site_points,
    graded_key,
    has_overhang,
    is_connected,
    node_count,
    normalize_support,
    hull_of,
    sub,
    support_sc,
    support_size,
    unit,
    weighted_surface_count_2d,
)
from .errors import CapExceeded, InternalContradiction, PreconditionError


@dataclass(frozen=True)
class TransformReceipt:
    name: str
    before: NewtonDiagram
    after: NewtonDiagram
    metric: str  # "node_count" or "sc"
    delta_bound: Fraction
    delta_actual: Fraction
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.delta_actual <= self.delta_bound

    def to_json_obj(self) -> dict:
        return {
            "transform": self.name,
            "metric": self.metric,
            "delta_bound": str(self.delta_bound),
            "delta_actual": str(self.delta_actual),
            "satisfied": self.satisfied,
            "before": self.before.to_json_obj(),
            "after": self.after.to_json_obj(),
            "details": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.details.items()},
        }


def _check(receipt: TransformReceipt) -> TransformReceipt:
    if not receipt.satisfied:
        raise InternalContradiction(
            f"{receipt.name}: {receipt.metric} changed by {receipt.delta_actual}, bound {receipt.delta_bound}"
        )
    return receipt


def _require_2d(D: NewtonDiagram):
    if D.n != 2:
        raise PreconditionError("this transform needs a two-dimensional diagram")


def _row(k: int) -> list[tuple[int, int]]:
    """Level-``k`` points from left to right: position ``i`` is ``(k - i, i)``."""
    return [(k - i, i) for i in range(k + 1)]


def _metric_value(D: NewtonDiagram, metric: str) -> Fraction:
    if metric == "nodes":
        return Fraction(node_count(D))
    return weighted_surface_count_2d(D)


# -- filling a level --------------------------------------------------------------------


def fill_level_2d(D: NewtonDiagram, k: int, metric: str = "nodes") -> TransformReceipt:
    """Fill every 0-point at level ``k`` without increasing the chosen metric.

    ``metric="nodes"`` alternates signs along each run of zeros; a run that
    reaches the boundary starts at the boundary with the sign opposite to the
    point below it.  ``metric="sc"`` picks the fill of the whole level that
    minimises the weighted surface count exactly; this is never worse than
    filling one point at a time.
    """
    _require_2d(D)
    if metric not in ("nodes", "sc"):
        raise PreconditionError(f"unknown metric {metric!r}")
    if not 0 <= k < D.d:
        raise PreconditionError(f"need 0 <= k < d, got k={k}, d={D.d}")
    for j in range(k):
        for m in _row(j):
            if m not in D.signs:
                raise PreconditionError(f"level {j} is not full (missing {m})")
    row = _row(k)
    if not any(m in D.signs for m in row):
        raise PreconditionError(f"level {k} has no nonzero point to grow from")

    signs = dict(D.signs)
    before = _metric_value(D, metric)
    if metric == "nodes":
        i = 0
        while i <= k:
            if row[i] in signs:
                i += 1
                continue
            j = i
            while j + 1 <= k and row[j + 1] not in signs:
                j += 1
            run = list(range(i, j + 1))
            if i == 0:
                below = signs[(k - 1, 0)] if k >= 1 else P
                start = -below
                order = run
            elif j == k:
                below = signs[(0, k - 1)] if k >= 1 else P
                start = -below
                order = run[::-1]
            else:
                start = P
                order = run
            sgn = start
            for pos in order:
                signs[row[pos]] = sgn
                sgn = -sgn
            i = j + 1
        after_D = NewtonDiagram(2, D.d, signs)
        after = _metric_value(after_D, metric)
        steps = None
    else:
        after_D = _fill_level_sc_exact(D, k)
        after = _metric_value(after_D, metric)
        steps = None
    details = {"k": k}
    if steps is not None:
        details["steps"] = steps
    return _check(
        TransformReceipt(
            "fill_level_2d",
            D,
            after_D,
            "node_count" if metric == "nodes" else "sc",
            Fraction(0),
            after - before,
            details,
        )
    )


def fill_to_maximal_2d(D: NewtonDiagram, metric: str = "nodes") -> tuple[NewtonDiagram, list[TransformReceipt]]:
    """Apply :func:`fill_level_2d` level by level until the support is the full simplex."""
    receipts = []
    cur = D
    for k in range(D.d):
        if all(m in cur.signs for m in _row(k)):
            continue
        r = fill_level_2d(cur, k, metric)
        receipts.append(r)
        cur = r.after
    return cur, receipts


def _fill_level_sc_exact(D: NewtonDiagram, k: int) -> NewtonDiagram:
    """Exact SC-minimising fill of the 0-points at level ``k`` (others kept)."""
    row = _row(k)
    free = [m for m in row if m not in D.signs]
    index = {m: i for i, m in enumerate(free)}
    sites = []
    for alpha in compositions(D.d, 3):
        pts = site_points(alpha)
        members = tuple(index[m] for m in pts if m in index)
        if not members:
            continue
        fixed = {D.signs[m] for m in pts if m in D.signs}
        if len(fixed) > 1:
            continue
        filled = [m in index or m in D.signs for m in pts]
        zeros = filled.count(False)
        if zeros == 0:
            w = 2
        elif zeros == 1:
            w = 1
        else:
            w = 0 if filled[0] else 1
        if w:
            sites.append(SiteSpec(members, w, fixed.pop() if fixed else None))
    _, assign = minimize_signs(free, [m[1] for m in free], sites, fix_first=False)
    signs = dict(D.signs)
    signs.update(assign)
    return NewtonDiagram(2, D.d, signs)


# -- slicing a column ---------------------------------------------------------------


def slice_column_2d(D: NewtonDiagram, k: int) -> TransformReceipt:
    """Drop the boundary column ``{m_1 = 0}`` and shift the rest by ``-e_1``.

    Preconditions: every point below level ``k`` is in the support and
    ``(0, b)`` and ``(1, b - 1)`` are 0-points for every ``b >= k``, with
    ``1 <= k < d``.  The weighted surface count drops by at least one half.
    """
    _require_2d(D)
    if not 1 <= k < D.d:
        raise PreconditionError(f"need 1 <= k < d, got k={k}, d={D.d}")
    for j in range(k):
        for m in _row(j):
            if m not in D.signs:
                raise PreconditionError(f"level {j} is not full (missing {m})")
    for b in range(k, D.d + 1):
        if (0, b) in D.signs or (1, b - 1) in D.signs:
            raise PreconditionError(f"column guard fails at b={b}")
    signs = {(a - 1, b): s for (a, b), s in D.signs.items() if a >= 1}
    new_d = max(1, D.d - 1)
    after = NewtonDiagram(2, new_d, signs)
    delta = weighted_surface_count_2d(after) - weighted_surface_count_2d(D)
    return _check(TransformReceipt("slice_column_2d", D, after, "sc", Fraction(-1, 2), delta, {"k": k}))


# -- prescribed minimal triangles and gluing ------------------------------------------


def prescribed_minimal_2d(top_row: Sequence, d: int) -> NewtonDiagram:
    """Maximal diagram of size ``d`` with the given top row and ``SC = (d+1)/2``.

    The top row is read left to right (position ``i`` is ``(d-1-i, i)``); each
    lower level drops the leftmost entry of the level above and flips all signs.
    """
    if len(top_row) != d:
        raise PreconditionError(f"top row has {len(top_row)} entries, expected {d}")
    if d < 1:
        raise PreconditionError("d must be at least 1")
    signs = {}
    row = [P if s in ("P", P, 1) else N for s in top_row]
    if any(s not in ("P", "N", P, N) for s in top_row):
        raise PreconditionError("top row entries must be P or N")
    for i, s in enumerate(row):
        signs[(d - 1 - i, i)] = s
    for lev in range(d - 2, -1, -1):
        for a in range(lev + 1):
            b = lev - a
            signs[(a, b)] = -signs[(a, b + 1)]
    D = NewtonDiagram(2, d, signs)
    sc = weighted_surface_count_2d(D)
    if sc != Fraction(d + 1, 2):
        raise InternalContradiction(f"prescribed triangle has SC {sc}, expected {Fraction(d + 1, 2)}")
    return D


def triangle_glue_2d(D: NewtonDiagram, k: int, max_k: int = 12) -> TransformReceipt:
    """Glue a prescribed minimal triangle below level ``k``.

    Every choice of top row for the triangle is tried (in a fixed order with P
    first) and the one giving the smallest weighted surface count is kept.
    The result satisfies ``SC(after) <= k/2 + SC(before)``.
    """
    _require_2d(D)
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if any(sum(m) < k for m in D.signs):
        raise PreconditionError(f"support must be empty below level {k}")
    if not any(sum(m) == k for m in D.signs):
        raise PreconditionError(f"support needs a point at level {k}")
    if k > max_k:
        raise CapExceeded(f"glue search over 2^{k} top rows exceeds the cap 2^{max_k}", 2**k)
    base = weighted_surface_count_2d(D)
    best = None
    for bits in itertools.product((P, N), repeat=k):
        tri = prescribed_minimal_2d(list(bits), k)
        merged = dict(tri.signs)
        merged.update(D.signs)
        cand = NewtonDiagram(2, D.d, merged)
        sc = weighted_surface_count_2d(cand)
        if best is None or sc < best[0]:
            best = (sc, cand, bits)
    sc, after, bits = best
    return _check(
        TransformReceipt(
            "triangle_glue_2d",
            D,
            after,
            "sc",
            Fraction(k, 2),
            sc - base,
            {"k": k, "top_row": "".join(SIGN_CHAR[b] for b in bits)},
        )
    )


# -- three-dimensional reduction step --------------------------------------------------


@dataclass(frozen=True)
class Reduce3DResult:
    kind: str  # "slice", "fill" or "terminal"
    diagram: NewtonDiagram
    receipt: TransformReceipt | None = None


def _translate(D: NewtonDiagram) -> NewtonDiagram:
    lo = hull_of(D.signs).lower
    if not any(lo):
        return D
    return NewtonDiagram(D.n, D.d, {sub(m, lo): s for m, s in D.signs.items()})


def reduce_3d_step(D: NewtonDiagram, face_cap: int = 22) -> Reduce3DResult:
    """One step of the 3D reduction: slice off an empty-edge face or fill a level.

    Surface counts in the receipts are support-level quantities (minimum over
    sign maps of each face), so they do not depend on the chosen signs.
    """
    if D.n != 3:
        raise PreconditionError("reduce_3d_step needs n = 3")
    if not D.signs:
        raise PreconditionError("empty diagram")
    if not is_connected(D.signs):
        raise PreconditionError("support is disconnected")
    over, witness = has_overhang(D.signs)
    if over:
        raise PreconditionError(f"support has an overhang at {witness['point']}")
    D = _translate(D)
    K = set(D.signs)
    size = support_size(K)
    k = 0
    while k < size and all(m in K for m in _simplex_level(k)):
        k += 1
    if k >= size:
        return Reduce3DResult("terminal", D)
    level_k = _simplex_level(k)
    present = [m for m in level_k if m in K]
    missing_edge = next((j for j in range(3) if not any(m[j] == 0 for m in present)), None)
    sc_before = support_sc(K, face_cap)
    if missing_edge is not None:
        j = missing_edge
        signs = {sub(m, unit(3, j)): s for m, s in D.signs.items() if m[j] > 0}
        after = NewtonDiagram(3, max(1, D.d - 1), signs)
        sc_after = support_sc(signs, face_cap)
        receipt = TransformReceipt(
            "slice_off_face",
            D,
            after,
            "sc",
            Fraction(-2),
            sc_after - sc_before,
            {"k": k, "plane": f"m{j + 1}=0", "size_before": size, "size_after": support_size(signs)},
        )
        return Reduce3DResult("slice", after, _check(receipt))

    signs = dict(D.signs)
    for m in sorted(level_k, key=graded_key):
        if m in signs or m[0] == 0:
            continue
        signs[m] = signs[sub(m, unit(3, 0))]
    # remaining zeros lie on the edge m1 = 0; grow them from filled neighbours
    edge = [(0, b, k - b) for b in range(k + 1)]
    while any(m not in signs for m in edge):
        for idx, m in enumerate(edge):
            if m in signs:
                continue
            nbrs = [edge[i] for i in (idx - 1, idx + 1) if 0 <= i < len(edge) and edge[i] in signs]
            if nbrs:
                signs[m] = -signs[nbrs[0]]
                break
    after = NewtonDiagram(3, D.d, signs)
    sc_after = support_sc(signs, face_cap)
    receipt = TransformReceipt(
        "fill_level_3d",
        D,
        after,
        "sc",
        Fraction(0),
        sc_after - sc_before,
        {"k": k, "added": len(signs) - len(D.signs)},
    )
    return Reduce3DResult("fill", after, _check(receipt))


def _simplex_level(k: int) -> list[tuple[int, int, int]]:
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


# -- viewing a 3D diagram from the side -------------------------------------------------


def view_diagrams_3d(D: NewtonDiagram) -> tuple[NewtonDiagram, NewtonDiagram]:
    """Collapse the second and third coordinates: ``(a, b, c) -> (a, b + c)``.

    ``D1(a, b)`` takes the value at ``(a, k, b - k)`` for the smallest ``k``
    with a nonzero value and ``D2`` uses the largest such ``k``.
    """
    if D.n != 3:
        raise PreconditionError("view_diagrams_3d needs n = 3")
    first: dict = {}
    last: dict = {}
    for (a, b, c), s in sorted(D.signs.items()):
        key = (a, b + c)
        if key not in first or b < first[key][0]:
            first[key] = (b, s)
        if key not in last or b > last[key][0]:
            last[key] = (b, s)
    D1 = NewtonDiagram(2, D.d, {m: s for m, (_, s) in first.items()})
    D2 = NewtonDiagram(2, D.d, {m: s for m, (_, s) in last.items()})
    return D1, D2
