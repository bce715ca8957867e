"""Static Newton-polygon pictures: SVG 1.1 documents and plain-text grids."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .grading import PolygonRecord

CELL = 24
PAD = 2


def _frame(rec: PolygonRecord):
    xs = [p[0] for p in rec.support] + [0]
    ys = [p[1] for p in rec.support] + [0]
    return min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1


def svg(rec: PolygonRecord, title: str = "", cell: int = CELL) -> str:
    """Grid, shaded hull, one dot per support point, one label per Dir edge."""
    x0, x1, y0, y1 = _frame(rec)
    w = (x1 - x0 + 2 * PAD) * cell
    h = (y1 - y0 + 2 * PAD) * cell

    def px(i, j):
        return (i - x0 + PAD) * cell, (y1 - j + PAD) * cell

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<g class="grid" stroke="#ccc" stroke-width="0.5">')
    for i in range(x0, x1 + 1):
        (a, b), (_, c) = px(i, y0), px(i, y1)
        out.append(f'<line x1="{a}" y1="{b}" x2="{a}" y2="{c}"/>')
    for j in range(y0, y1 + 1):
        (a, b), (c, _) = px(x0, j), px(x1, j)
        out.append(f'<line x1="{a}" y1="{b}" x2="{c}" y2="{b}"/>')
    out.append("</g>")
    # axes
    (ax, ay), (bx, _) = px(x0, 0), px(x1, 0)
    out.append(f'<line class="axis" x1="{ax}" y1="{ay}" x2="{bx}" y2="{ay}" stroke="black"/>')
    (cx, cy), (_, dy) = px(0, y0), px(0, y1)
    out.append(f'<line class="axis" x1="{cx}" y1="{cy}" x2="{cx}" y2="{dy}" stroke="black"/>')
    if len(rec.hull) >= 3:
        pts = " ".join("{},{}".format(*px(*v)) for v in rec.hull)
        out.append(f'<polygon class="hull" points="{pts}" fill="#ddd" stroke="black"/>')
    elif len(rec.hull) == 2:
        (a, b), (c, d) = px(*rec.hull[0]), px(*rec.hull[1])
        out.append(f'<line class="hull" x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="black"/>')
    for e in rec.edges:
        (a, b), (c, d) = px(*e.st), px(*e.en)
        mx, my = (a + c) / 2, (b + d) / 2
        out.append(f'<line class="dir-edge" x1="{a}" y1="{b}" x2="{c}" y2="{d}" '
                   f'stroke="black" stroke-width="2"/>')
        out.append(f'<text class="dir-label" x="{mx + 4}" y="{my - 4}" font-size="11">'
                   f'{escape(str(e.direction))}</text>')
    for i, j in rec.support:
        a, b = px(i, j)
        out.append(f'<circle class="support" cx="{a}" cy="{b}" r="3" fill="#444"/>')
    out.append("</svg>")
    return "\n".join(out)


def ascii_art(rec: PolygonRecord) -> str:
    """Rows from top y down; '*' marks support, '+' the origin, '.' the rest."""
    x0, x1, y0, y1 = _frame(rec)
    pts = set(map(tuple, rec.support))
    lines = []
    for j in range(y1, y0 - 1, -1):
        row = []
        for i in range(x0, x1 + 1):
            row.append("*" if (i, j) in pts else "+" if (i, j) == (0, 0) else ".")
        lines.append(f"{j:>4} " + "".join(row))
    lines.append(f"     x from {x0} to {x1}")
    for e in rec.edges:
        lines.append(f"edge {e.st}-{e.en} dir {e.direction}")
    return "\n".join(lines)
