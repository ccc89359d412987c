"""ASCII and SVG drawings of Newton diagrams on the triangular lattice.

Point ``(a, b)`` is placed at ``a`` steps along angle 2pi/3 plus ``b`` steps
along angle pi/3, so each level of the simplex is one horizontal row.
"""

from __future__ import annotations

from math import sqrt

from .diagram import NewtonDiagram, P, _projection, adjacent, simplex_points
from .errors import PreconditionError

LIGHT = "#f4f4f4"
DARK = "#202020"


def _xy(m, scale: float = 30.0):
    a, b = m
    return (b - a) * scale / 2, -(a + b) * scale * sqrt(3) / 2


def _project_3d(D: NewtonDiagram, j: int) -> NewtonDiagram:
    """Collapse view; a fibre takes the sign of its lexicographically first nonzero point."""
    signs = {}
    for m in sorted(D.signs):
        q = _projection(j, m)
        signs.setdefault(q, D.signs[m])
    return NewtonDiagram(2, D.d, signs)


def ascii_2d(D: NewtonDiagram) -> str:
    if D.n != 2:
        raise PreconditionError("ascii_2d needs a 2D diagram")
    lines = []
    width = 2 * (D.d - 1)
    for k in range(D.d - 1, -1, -1):
        row = [" "] * (width + 1)
        for a in range(k, -1, -1):
            b = k - a
            col = (b - a) + (D.d - 1)
            v = D.value((a, b))
            row[col] = "P" if v == P else ("N" if v else ".")
        lines.append("".join(row).rstrip())
    return "\n".join(lines)


def render_ascii(D: NewtonDiagram) -> str:
    if D.n == 2:
        return ascii_2d(D)
    if D.n == 3:
        out = []
        for j in range(3):
            out.append(f"projection {j + 1}:")
            out.append(ascii_2d(_project_3d(D, j)))
        out.append("levels (rows: first coordinate; columns: second):")
        for k in range(D.d):
            out.append(f"level {k}:")
            for a in range(k, -1, -1):
                cells = []
                for b in range(k - a + 1):
                    v = D.value((a, b, k - a - b))
                    cells.append("P" if v == P else ("N" if v else "."))
                out.append("  " + " ".join(cells))
        return "\n".join(out)
    raise PreconditionError("rendering supports n in {2, 3}")


def _svg_panel(D: NewtonDiagram, dx: float, dy: float, scale: float) -> list[str]:
    parts = []
    pts = sorted(D.signs)
    for i, m in enumerate(pts):
        for m2 in pts[i + 1 :]:
            if adjacent(m, m2):
                x1, y1 = _xy(m, scale)
                x2, y2 = _xy(m2, scale)
                parts.append(
                    f'<line x1="{x1 + dx:.2f}" y1="{y1 + dy:.2f}" x2="{x2 + dx:.2f}" y2="{y2 + dy:.2f}" '
                    'stroke="#888888" stroke-width="1.5"/>'
                )
    for m in simplex_points(2, D.d):
        x, y = _xy(m, scale)
        v = D.value(m)
        if v:
            cls, fill = ("P", LIGHT) if v == P else ("N", DARK)
            parts.append(
                f'<circle class="{cls}" cx="{x + dx:.2f}" cy="{y + dy:.2f}" r="{scale / 5:.2f}" '
                f'fill="{fill}" stroke="#000000"/>'
            )
        else:
            parts.append(f'<circle class="lattice" cx="{x + dx:.2f}" cy="{y + dy:.2f}" r="1.50" fill="#999999"/>')
    return parts


def render_svg(D: NewtonDiagram, scale: float = 30.0) -> str:
    """Deterministic SVG; 3D diagrams are drawn as their three projection views side by side."""
    if D.n == 2:
        panels = [D]
    elif D.n == 3:
        panels = [_project_3d(D, j) for j in range(3)]
    else:
        raise PreconditionError("rendering supports n in {2, 3}")
    span = max(D.d - 1, 1) * scale
    w_panel = span + 2 * scale
    h = span * sqrt(3) / 2 + 2 * scale
    body = []
    for i, Dp in enumerate(panels):
        dx = i * w_panel + w_panel / 2
        dy = h - scale
        body.append(f'<g id="panel{i + 1}">')
        body.extend(_svg_panel(Dp, dx, dy, scale))
        body.append("</g>")
    width = w_panel * len(panels)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{h:.0f}" '
        f'viewBox="0 0 {width:.2f} {h:.2f}">'
    )
    return "\n".join([head] + body + ["</svg>"]) + "\n"


def render_diagram(D: NewtonDiagram, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(D)
    if fmt == "svg":
        return render_svg(D)
    raise PreconditionError(f"unknown format {fmt!r}")
