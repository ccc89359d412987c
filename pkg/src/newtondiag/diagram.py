"""Newton diagrams: sign patterns of the quotient ``Q = P / S`` on the lattice.

A lattice point ``m`` encodes the monomial ``X^gamma(m)`` with
``gamma(m) = (d - 1 - |m|, m)``.  A node is a degree-``d`` multi-index whose
contributing quotient points all carry the same sign (zeros allowed), which
forces a nonzero coefficient in ``P``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CapExceeded, PreconditionError
from .polynomial import Polynomial, PolynomialError

P, N = 1, -1
SIGN_CHAR = {P: "P", N: "N"}
CHAR_SIGN = {"P": P, "N": N}

Point = tuple[int, ...]


def level(m: Sequence[int]) -> int:
    return sum(m)


def unit(n: int, k: int) -> Point:
    return tuple(int(i == k) for i in range(n))


def add(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def compositions(total: int, parts: int) -> Iterator[Point]:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def simplex_points(n: int, d: int) -> list[Point]:
    """Points ``m >= 0`` with ``|m| <= d - 1`` in graded-lex ascending order."""
    pts = [m for k in range(d) for m in compositions(k, n)]
    return sorted(pts, key=graded_key)


def graded_key(m: Sequence[int]):
    return (sum(m), tuple(-v for v in m))


@dataclass(frozen=True, eq=False)
class NewtonDiagram:
    n: int
    d: int
    signs: Mapping[Point, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, s in self.signs.items():
            m = tuple(int(v) for v in m)
            if isinstance(s, str):
                s = CHAR_SIGN[s]
            if len(m) != self.n:
                raise PreconditionError(f"point {m} does not have {self.n} coordinates")
            if min(m) < 0 or sum(m) > self.d - 1:
                raise PreconditionError(f"point {m} lies outside the simplex |m| <= {self.d - 1}")
            if s not in (P, N):
                raise PreconditionError(f"sign must be P or N, got {s!r}")
            clean[m] = s
        object.__setattr__(self, "signs", clean)

    def __eq__(self, other):
        if not isinstance(other, NewtonDiagram):
            return NotImplemented
        return (self.n, self.d, self.signs) == (other.n, other.d, other.signs)

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self.signs.items())))

    def value(self, m: Sequence[int]) -> int:
        return self.signs.get(tuple(m), 0)

    @property
    def support(self) -> frozenset:
        return frozenset(self.signs)

    def flipped(self) -> NewtonDiagram:
        return NewtonDiagram(self.n, self.d, {m: -s for m, s in self.signs.items()})

    def with_degree(self, d: int) -> NewtonDiagram:
        return NewtonDiagram(self.n, d, self.signs)

    def points_at_level(self, k: int) -> list[Point]:
        return sorted((m for m in self.signs if sum(m) == k), key=graded_key)

    def to_json_obj(self) -> dict:
        pts = sorted(self.signs, key=graded_key)
        return {
            "n": self.n,
            "d": self.d,
            "points": [{"m": list(m), "sign": SIGN_CHAR[self.signs[m]]} for m in pts],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> NewtonDiagram:
        try:
            n, d = int(obj["n"]), int(obj["d"])
            signs = {}
            for pt in obj["points"]:
                signs[tuple(pt["m"])] = CHAR_SIGN[pt["sign"]]
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed diagram JSON: {exc}") from exc
        return cls(n, d, signs)

    @classmethod
    def from_json(cls, text: str) -> NewtonDiagram:
        return cls.from_json_obj(json.loads(text))


def gamma(m: Sequence[int], d: int) -> Point:
    return (d - 1 - sum(m),) + tuple(m)


def diagram_of(Q: Polynomial, d: int) -> NewtonDiagram:
    """Read the sign pattern of ``Q`` (homogeneous of degree ``d-1`` in ``n+1`` variables)."""
    if Q and (not Q.is_homogeneous() or Q.degree != d - 1):
        raise PreconditionError(f"Q must be homogeneous of degree {d - 1}")
    signs = {e[1:]: (P if c > 0 else N) for e, c in Q.terms.items()}
    return NewtonDiagram(Q.nvars - 1, d, signs)


def realize(D: NewtonDiagram) -> Polynomial:
    """Unit-magnitude quotient with the signs of ``D``."""
    return Polynomial(D.n + 1, {gamma(m, D.d): s for m, s in D.signs.items()})


def diagram_of_polynomial(p: Polynomial) -> NewtonDiagram:
    """Diagram of an affine polynomial constant on ``s = 1`` (via homogenization)."""
    from .polynomial import divide_by_s, homogenize_and_flip

    P_ = homogenize_and_flip(p)
    return diagram_of(divide_by_s(P_), P_.degree)


# -- nodes ------------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeSite:
    alpha: Point
    points: tuple[Point, ...]
    values: tuple[int, ...]
    is_node: bool
    kind: str | None = None  # 2D: interior, edge, vertex, bottom, not-a-node

    @property
    def zeros(self) -> int:
        return sum(1 for v in self.values if v == 0)


def site_points(alpha: Sequence[int]) -> tuple[Point, ...]:
    """``E(alpha)``: the upper point ``alpha[1:]`` followed by its lower neighbours."""
    upper = tuple(alpha[1:])
    n = len(upper)
    return (upper,) + tuple(sub(upper, unit(n, k)) for k in range(n))


def classify_values(values: Sequence[int]) -> bool:
    nz = {v for v in values if v}
    return len(nz) == 1


def classify_2d(values: Sequence[int]) -> str:
    if not classify_values(values):
        return "not-a-node"
    zeros = sum(1 for v in values if v == 0)
    if zeros == 0:
        return "interior"
    if zeros == 1:
        return "edge"
    if values[0] != 0:
        return "bottom"
    return "vertex"


def node_sites(D: NewtonDiagram) -> Iterator[NodeSite]:
    for alpha in compositions(D.d, D.n + 1):
        pts = site_points(alpha)
        vals = tuple(D.value(m) for m in pts)
        node = classify_values(vals)
        kind = classify_2d(vals) if D.n == 2 else None
        yield NodeSite(alpha, pts, vals, node, kind)


def nodes(D: NewtonDiagram) -> list[NodeSite]:
    return [s for s in node_sites(D) if s.is_node]


def node_count(D: NewtonDiagram) -> int:
    return len(nodes(D))


def node_kinds_2d(D: NewtonDiagram) -> dict[str, int]:
    if D.n != 2:
        raise PreconditionError("node kinds are defined for n = 2 only")
    counts = {"interior": 0, "edge": 0, "vertex": 0, "bottom": 0}
    for s in nodes(D):
        counts[s.kind] += 1
    return counts


def weighted_surface_count_2d(D: NewtonDiagram) -> Fraction:
    """Interior nodes count 1, edge and non-bottom vertex nodes count 1/2, bottom nodes 0."""
    if D.n != 2:
        raise PreconditionError("weighted surface count is defined for n = 2")
    k = node_kinds_2d(D)
    return k["interior"] + Fraction(k["edge"] + k["vertex"], 2)


# -- support geometry ---------------------------------------------------------------


def neighbors(m: Sequence[int]) -> Iterator[Point]:
    """Lattice neighbours: same-level swaps ``e_k - e_j`` and single-coordinate steps."""
    m = tuple(m)
    n = len(m)
    for k in range(n):
        for sgn in (1, -1):
            yield m[:k] + (m[k] + sgn,) + m[k + 1 :]
        for j in range(n):
            if j != k:
                out = list(m)
                out[k] += 1
                out[j] -= 1
                yield tuple(out)


def adjacent(a: Sequence[int], b: Sequence[int]) -> bool:
    return lattice_distance(a, b) == 1


def lattice_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Shortest-path length in the full lattice: positive part of ``gamma(a) - gamma(b)``."""
    diff = [sum(b) - sum(a)] + [x - y for x, y in zip(a, b)]
    return sum(v for v in diff if v > 0)


def components(K: Iterable[Sequence[int]]) -> list[list[Point]]:
    pts = {tuple(m) for m in K}
    seen: set = set()
    comps = []
    for start in sorted(pts, key=graded_key):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nb in neighbors(cur):
                if nb in pts and nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    queue.append(nb)
        comps.append(sorted(comp, key=graded_key))
    return comps


def is_connected(K: Iterable[Sequence[int]]) -> bool:
    return len(components(K)) <= 1


def distance(m1: Sequence[int], m2: Sequence[int], K: Iterable[Sequence[int]] | None = None) -> int | None:
    """Lattice distance, or the path length inside ``K`` when ``K`` is given (None if unreachable)."""
    if K is None:
        return lattice_distance(m1, m2)
    pts = {tuple(m) for m in K}
    a, b = tuple(m1), tuple(m2)
    if a not in pts or b not in pts:
        raise PreconditionError("endpoints must lie in K")
    dist = {a: 0}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        if cur == b:
            return dist[cur]
        for nb in neighbors(cur):
            if nb in pts and nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    return None


@dataclass(frozen=True)
class Hull:
    lower: Point  # a_j: coordinatewise minima
    top: int  # k: maximal level

    @property
    def diameter(self) -> int:
        return self.top - sum(self.lower)


@dataclass(frozen=True)
class SupportGeometry:
    connected: bool
    size: int
    hull: Hull
    component_count: int


def hull_of(K: Iterable[Sequence[int]]) -> Hull:
    pts = [tuple(m) for m in K]
    if not pts:
        raise PreconditionError("empty support")
    n = len(pts[0])
    return Hull(tuple(min(m[i] for m in pts) for i in range(n)), max(sum(m) for m in pts))


def support_size(K: Iterable[Sequence[int]]) -> int:
    return hull_of(K).diameter + 1


def support_geometry(K: Iterable[Sequence[int]]) -> SupportGeometry:
    pts = [tuple(m) for m in K]
    if not pts:
        raise PreconditionError("empty support")
    h = hull_of(pts)
    comps = components(pts)
    return SupportGeometry(len(comps) == 1, h.diameter + 1, h, len(comps))


def normalize_support(K: Iterable[Sequence[int]]) -> frozenset:
    """Translate so every coordinate attains 0."""
    pts = [tuple(m) for m in K]
    lo = hull_of(pts).lower
    return frozenset(sub(m, lo) for m in pts)


# -- overhang -------------------------------------------------------------------------------


def _overhang_2d(K: set) -> tuple[Point, str] | None:
    def left(a, b, pts):
        if (a, b) == (0, 0):
            return False
        if (a, b - 1) in pts:
            return False
        return not any(x == a - 1 and y >= b for (x, y) in pts)

    for m in sorted(K, key=graded_key):
        if left(m[0], m[1], K):
            return m, "left"
    swapped = {(b, a) for a, b in K}
    for m in sorted(swapped, key=graded_key):
        if left(m[0], m[1], swapped):
            return (m[1], m[0]), "right"
    return None


def _projection(j: int, m: Point) -> Point:
    a, b, c = m
    return [(a, b + c), (a + c, b), (a + b, c)][j]


def overhang_witness(K: Iterable[Sequence[int]]) -> dict | None:
    """Return a witness dict for an overhang, or None when there is none."""
    pts = {tuple(m) for m in K}
    if not pts:
        return None
    n = len(next(iter(pts)))
    if n == 2:
        w = _overhang_2d(pts)
        return None if w is None else {"point": w[0], "side": w[1]}
    if n == 3:
        for j in range(3):
            proj = {_projection(j, m) for m in pts}
            w = _overhang_2d(proj)
            if w is not None:
                src = next(m for m in sorted(pts, key=graded_key) if _projection(j, m) == w[0])
                return {"point": src, "side": w[1], "projection": j + 1, "projected": w[0]}
        return None
    raise PreconditionError("overhang is defined for n in {2, 3}")


def has_overhang(K: Iterable[Sequence[int]]) -> tuple[bool, dict | None]:
    w = overhang_witness(K)
    return w is not None, w


# -- exact minimisation over sign assignments (layered dynamic programme) --------------


@dataclass
class SiteSpec:
    members: tuple[int, ...]  # indices into the point list (points inside K only)
    weight: int  # scaled integer weight
    forced: int | None = None  # sign the free members must all take (fixed points present)


def minimize_signs(
    points: Sequence[Point],
    levels: Sequence[int],
    sites: Sequence[SiteSpec],
    fix_first: bool = True,
    max_states: int = 1 << 24,
) -> tuple[int, dict[Point, int]]:
    """Exact minimum of the weighted count of monochromatic sites over sign maps.

    Every site must touch at most two consecutive values of ``levels``, so the
    minimisation factorises into a chain and is solved level by level.  The
    cost is symmetric under a global sign flip, which ``fix_first`` exploits.
    Returns the minimum and one minimising assignment (ties resolved toward P
    on the first level encountered in the backtrack).
    """
    if not points:
        return 0, {}
    lv = sorted(set(levels))
    pos_of_level = {l: i for i, l in enumerate(lv)}
    groups: list[list[int]] = [[] for _ in lv]
    slot = {}
    for idx, l in enumerate(levels):
        g = pos_of_level[l]
        slot[idx] = (g, len(groups[g]))
        groups[g].append(idx)
    sizes = [len(g) for g in groups]
    for a, b in zip([0] + sizes, sizes):
        if (1 << (a + b)) > max_states:
            raise CapExceeded("sign search too large for the layered solver", 1 << (a + b))

    unary = [np.zeros(1 << s, dtype=np.int64) for s in sizes]
    pair = [None] + [np.zeros((1 << sizes[g - 1], 1 << sizes[g]), dtype=np.int64) for g in range(1, len(lv))]
    states = [np.arange(1 << s, dtype=np.int64) for s in sizes]

    def masks(members):
        by_group: dict[int, int] = {}
        for idx in members:
            g, bit = slot[idx]
            by_group[g] = by_group.get(g, 0) | (1 << bit)
        return by_group

    for site in sites:
        if not site.members or not site.weight:
            continue
        mk = masks(site.members)
        gs = sorted(mk)
        if len(gs) == 1:
            g = gs[0]
            s = states[g]
            m = mk[g]
            if site.forced is None:
                mono = ((s & m) == m) | ((s & m) == 0)
            else:
                mono = (s & m) == (m if site.forced == P else 0)
            unary[g] += site.weight * mono
        elif len(gs) == 2 and gs[1] == gs[0] + 1 and lv[gs[1]] == lv[gs[0]] + 1:
            g0, g1 = gs
            s0, s1 = states[g0], states[g1]
            m0, m1 = mk[g0], mk[g1]
            p0, n0 = (s0 & m0) == m0, (s0 & m0) == 0
            p1, n1 = (s1 & m1) == m1, (s1 & m1) == 0
            if site.forced is None:
                mono = (p0[:, None] & p1[None, :]) | (n0[:, None] & n1[None, :])
            elif site.forced == P:
                mono = p0[:, None] & p1[None, :]
            else:
                mono = n0[:, None] & n1[None, :]
            pair[g1] += site.weight * mono
        else:
            raise PreconditionError("a site spans non-adjacent levels")

    big = np.int64(1) << 50
    if fix_first:
        unary[0] = unary[0] + np.where(states[0] & 1, 0, big)

    cost = unary[0].copy()
    back = []
    for g in range(1, len(lv)):
        total = cost[:, None] + pair[g]
        arg = np.argmin(total, axis=0)
        cost = total[arg, np.arange(total.shape[1])] + unary[g]
        back.append(arg)
    # prefer the assignment with the most P bits on the last level when tied
    best = int(cost.min())
    cands = np.flatnonzero(cost == best)
    state = int(cands[-1])
    chosen = [0] * len(lv)
    chosen[-1] = state
    for g in range(len(lv) - 1, 0, -1):
        state = int(back[g - 1][state])
        chosen[g - 1] = state
    assignment = {}
    for g, members in enumerate(groups):
        for bit, idx in enumerate(members):
            assignment[tuple(points[idx])] = P if (chosen[g] >> bit) & 1 else N
    return best, assignment


def _full_sites(K: Sequence[Point], n: int, d: int, weight_fn) -> list[SiteSpec]:
    index = {m: i for i, m in enumerate(K)}
    out = []
    for alpha in compositions(d, n + 1):
        pts = site_points(alpha)
        present = tuple(index[m] for m in pts if m in index)
        if not present:
            continue
        w = weight_fn(pts, [m in index for m in pts])
        if w:
            out.append(SiteSpec(present, w))
    return out


def _weight_nodes(pts, inside):
    return 1


def _weight_sc2d(pts, inside):
    # scaled by 2: interior 2, edge 1, vertex 1, bottom 0
    zeros = inside.count(False)
    if zeros == 0:
        return 2
    if zeros == 1:
        return 1
    if zeros == 2:
        return 0 if inside[0] else 1
    return 0


def min_over_signs(K: Iterable[Sequence[int]], d: int, metric: str = "nodes", cap: int = 24):
    """Minimum of ``#(D)`` (or of 2D ``SC``) over all sign maps on ``K``.

    Returns ``(minimum, argmin diagram)``.
    """
    pts = sorted({tuple(m) for m in K}, key=graded_key)
    if not pts:
        raise PreconditionError("empty support")
    if len(pts) > cap:
        raise CapExceeded(f"|K| = {len(pts)} exceeds the cap {cap}", 2 ** len(pts))
    n = len(pts[0])
    if metric == "nodes":
        wf, scale = _weight_nodes, 1
    elif metric == "sc":
        if n != 2:
            raise PreconditionError("sc metric needs n = 2")
        wf, scale = _weight_sc2d, 2
    else:
        raise PreconditionError(f"unknown metric {metric!r}")
    sites = _full_sites(pts, n, d, wf)
    best, assign = minimize_signs(pts, [sum(m) for m in pts], sites)
    D = NewtonDiagram(n, d, assign)
    value = Fraction(best, scale)
    return (int(value) if scale == 1 else value), D


# -- 3D faces ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    kind: str  # "vertical" or "horizontal"
    plane: tuple  # (j, C) for vertical, (C,) for horizontal
    points: frozenset

    def label(self) -> str:
        if self.kind == "vertical":
            return f"vertical(m{self.plane[0] + 1}={self.plane[1]})"
        return f"horizontal(|m|={self.plane[0]})"


def faces_3d(K: Iterable[Sequence[int]]) -> list[Face]:
    """Faces of a 3D support.

    A point ``m`` lies on the vertical face ``{m_j = C}`` when the point below
    it in direction ``j`` (``m - e_j``) is a 0-point, and on the horizontal face
    ``{|m| = C}`` when some point ``m + e_k`` above it is a 0-point.  Faces are
    the connected components of these face points within each plane.
    """
    pts = {tuple(m) for m in K}
    if pts and len(next(iter(pts))) != 3:
        raise PreconditionError("faces_3d needs n = 3")
    planes: dict[tuple, set] = {}
    for m in pts:
        for j in range(3):
            below = [sub(m, unit(3, j))] + [add(sub(m, unit(3, j)), unit(3, k)) for k in range(3) if k != j]
            if any(b not in pts for b in below):
                planes.setdefault(("vertical", (j, m[j])), set()).add(m)
        if any(add(m, unit(3, k)) not in pts for k in range(3)):
            planes.setdefault(("horizontal", (sum(m),)), set()).add(m)
    out = []
    for (kind, plane), fpts in sorted(planes.items(), key=lambda kv: (kv[0][0] != "vertical", kv[0][1])):
        for comp in components(fpts):
            out.append(Face(kind, plane, frozenset(comp)))
    return out


def _face_sites(face: Face, K: set) -> tuple[list[Point], list[int], list[SiteSpec]]:
    fpts = sorted(face.points, key=graded_key)
    index = {m: i for i, m in enumerate(fpts)}
    sites = []
    seen_triangles = set()
    if face.kind == "vertical":
        j, C = face.plane
        others = [i for i in range(3) if i != j]
        maxlev = max(sum(m) for m in fpts) + 1
        for lev in range(C, maxlev + 1):
            for a in range(lev - C + 1):
                u = [0, 0, 0]
                u[j], u[others[0]], u[others[1]] = C, a, lev - C - a
                u = tuple(u)
                tri = (u, sub(u, unit(3, others[0])), sub(u, unit(3, others[1])))
                if sub(u, unit(3, j)) in K:
                    continue  # the fourth point of the node lies in K and could cancel it
                if any(m in K and m not in index for m in tri):
                    continue
                inside = [m in index for m in tri]
                if not any(inside):
                    continue
                zeros = inside.count(False)
                if zeros == 0:
                    w = 2
                elif zeros == 1:
                    w = 1
                else:
                    w = 0 if inside[0] else 1  # bottom nodes carry no weight
                if w:
                    sites.append(SiteSpec(tuple(index[m] for m in tri if m in index), w))
        levels = [sum(m) for m in fpts]
    else:
        (C,) = face.plane
        for v in compositions(C + 1, 3):
            tri = tuple(sub(v, unit(3, k)) for k in range(3))
            if tri in seen_triangles:
                continue
            seen_triangles.add(tri)
            if v in K:
                continue
            if any(m in K and m not in index for m in tri):
                continue
            inside = [m in index for m in tri]
            zeros = inside.count(False)
            if zeros >= 2 or not any(inside):
                continue  # vertex nodes carry no weight on horizontal faces
            sites.append(SiteSpec(tuple(index[m] for m in tri if m in index), 2 if zeros == 0 else 1))
        levels = [m[2] for m in fpts]
    return fpts, levels, sites


def face_sc_min(face: Face, K: Iterable[Sequence[int]], cap: int = 22) -> Fraction:
    """Minimal weighted surface count of one face over all sign maps of its points."""
    Kset = {tuple(m) for m in K}
    if len(face.points) > cap:
        raise CapExceeded(f"face has {len(face.points)} points, cap is {cap}", 2 ** len(face.points))
    pts, levels, sites = _face_sites(face, Kset)
    best, _ = minimize_signs(pts, levels, sites)
    return Fraction(best, 2)


def support_sc(K: Iterable[Sequence[int]], cap: int = 22) -> Fraction:
    """``SC(K)``: sum of the face minima over all faces of a 3D support."""
    Kset = {tuple(m) for m in K}
    return sum((face_sc_min(f, Kset, cap) for f in faces_3d(Kset)), Fraction(0))


def diagram_sc_3d(D: NewtonDiagram) -> Fraction:
    """Weighted face count of a concrete 3D diagram (signs fixed, no minimisation)."""
    K = set(D.signs)
    total = Fraction(0)
    for face in faces_3d(K):
        pts, levels, sites = _face_sites(face, K)
        for site in sites:
            vals = {D.signs[pts[i]] for i in site.members}
            if len(vals) == 1:
                total += Fraction(site.weight, 2)
    return total
