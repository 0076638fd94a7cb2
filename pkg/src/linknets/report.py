"""Report emission: canonical JSON, markdown, CSV tables, and figures.

JSON and markdown reports are byte-deterministic for fixed inputs; the
figures (rendered only when an output path is given) are a convenience
layer and carry no certificate content of their own.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .io_schemas import dump_json


def render_markdown(title, report):
    """Generic deterministic markdown rendering of a report dict."""
    lines = [f"# {title}", ""]
    _render_value(report, lines, 0)
    return "\n".join(lines) + "\n"


def _render_value(value, lines, depth):
    indent = "  " * depth
    if isinstance(value, dict):
        for key in sorted(value):
            sub = value[key]
            if isinstance(sub, (dict, list)) and sub:
                lines.append(f"{indent}- **{key}**:")
                _render_value(sub, lines, depth + 1)
            else:
                lines.append(f"{indent}- **{key}**: {_scalar(sub)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{indent}-")
                _render_value(item, lines, depth + 1)
            else:
                lines.append(f"{indent}- {_scalar(item)}")
    else:
        lines.append(f"{indent}{_scalar(value)}")


def _scalar(x):
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "pass" if x else "FAIL"
    return str(x)


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def mu_table_rows(net, pairs):
    rows = []
    labels = net.ids
    for v, pair in enumerate(pairs):
        for mask in range(1 << len(labels)):
            subset = ";".join(pair.lower.labels_of(mask)) or "-"
            rows.append([
                labels[v],
                mask,
                subset,
                pair.lower.values[mask],
                pair.upper.values[mask],
            ])
    return rows


def chow_rows(chow):
    rows = []
    for q, owner in zip(chow.points, chow.owners):
        rows.append([
            ",".join(str(x) for x in q),
            ";".join(owner) if owner else "-",
            len(owner),
        ])
    return rows


def coverage_rows(cert):
    rows = []
    for witness in cert.clauses["coverage"].witnesses:
        for vid, count in sorted(witness["per_vertex"].items()):
            rows.append([witness["dilation"], vid, count, witness["simplex_points"]])
    return rows


class ReportWriter:
    """Writes the primary report plus delimited tables and figures."""

    def __init__(self, out_path, fmt="json", figures=True):
        self.out_path = Path(out_path) if out_path else None
        self.fmt = fmt
        self.figures = figures and self.out_path is not None
        self.written = []
        if self.out_path is not None:
            self.out_path.parent.mkdir(parents=True, exist_ok=True)

    def _sibling(self, suffix):
        stem = self.out_path.stem
        return self.out_path.with_name(f"{stem}.{suffix}")

    def emit(self, title, report):
        if self.fmt == "markdown":
            text = render_markdown(title, report)
        else:
            text = dump_json(report)
        if self.out_path is None:
            return text
        self.out_path.parent.mkdir(parents=True, exist_ok=True)
        self.out_path.write_text(text, encoding="utf-8")
        self.written.append(str(self.out_path))
        return text

    def emit_csv(self, suffix, header, rows):
        if self.out_path is None:
            return
        path = self._sibling(suffix)
        path.write_text(csv_text(header, rows), encoding="utf-8")
        self.written.append(str(path))

    def emit_figure(self, suffix, draw):
        """Render a matplotlib figure to a PNG sibling of the report."""
        if not self.figures:
            return
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig = plt.figure(figsize=(6, 5))
        try:
            drawn = draw(fig)
        except Exception:
            plt.close(fig)
            raise
        if drawn is False:
            plt.close(fig)
            return
        path = self._sibling(suffix)
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        self.written.append(str(path))


def draw_tiling(net, pairs):
    """Figure callback: the vertex polytopes inside the simplex (3 labels)."""
    from math import sqrt

    from .setfn import polytope_vertices

    if net.n_vertices != 3:
        return lambda fig: False

    def to_plane(q):
        total = net.dim
        return (q[1] + q[2] / 2) / total, (q[2] * sqrt(3) / 2) / total

    def draw(fig):
        ax = fig.add_subplot(111)
        d = net.dim
        corners = [(d, 0, 0), (0, d, 0), (0, 0, d)]
        xs, ys = zip(*(to_plane(c) for c in corners + corners[:1]))
        ax.plot(xs, ys, color="black", linewidth=1)
        colors = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"]
        for v, pair in enumerate(pairs):
            verts = polytope_vertices(pair)
            pts = [to_plane(q) for q in verts]
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            import math

            pts_sorted = sorted(
                pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx)
            )
            if len(pts_sorted) >= 3:
                ax.fill(
                    [p[0] for p in pts_sorted],
                    [p[1] for p in pts_sorted],
                    alpha=0.45,
                    color=colors[v % len(colors)],
                    label=net.ids[v],
                )
            else:
                ax.plot(
                    [p[0] for p in pts_sorted],
                    [p[1] for p in pts_sorted],
                    color=colors[v % len(colors)],
                    linewidth=3,
                    label=net.ids[v],
                )
            ax.annotate(net.ids[v], (cx, cy), ha="center", fontsize=9)
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title("vertex polytopes inside the standard simplex")
        return True

    return draw


def draw_complex(complex_obj):
    """Figure callback: the reduction complex on a circle layout."""
    from math import cos, pi, sin

    def draw(fig):
        ax = fig.add_subplot(111)
        ids = list(complex_obj.vertex_ids)
        n = len(ids)
        pos = {
            vid: (cos(2 * pi * i / n), sin(2 * pi * i / n))
            for i, vid in enumerate(ids)
        }
        for simplex in complex_obj.simplices:
            if len(simplex) == 3:
                xs = [pos[v][0] for v in simplex]
                ys = [pos[v][1] for v in simplex]
                ax.fill(xs, ys, alpha=0.3, color="#9edae5")
        for simplex in complex_obj.simplices:
            if len(simplex) == 2:
                a, b = simplex
                ax.plot(
                    [pos[a][0], pos[b][0]],
                    [pos[a][1], pos[b][1]],
                    color="#444444",
                )
        for vid, (x, y) in pos.items():
            ax.plot([x], [y], "o", color="#1f77b4")
            ax.annotate(vid, (x, y), textcoords="offset points", xytext=(5, 5))
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title("reduction complex (simplices = polygons)")
        return True

    return draw


def draw_chow(chow):
    """Figure callback: component sizes of the degree-point partition."""

    def draw(fig):
        ax = fig.add_subplot(111)
        per = chow.per_component()
        ids = sorted(per)
        counts = [len(per[v]) for v in ids]
        ax.bar(range(len(ids)), counts, color="#1f77b4")
        ax.set_xticks(range(len(ids)))
        ax.set_xticklabels(ids, rotation=45, ha="right", fontsize=8)
        ax.set_ylabel("degree points owned")
        ax.set_title("degree-point partition by component")
        return True

    return draw
