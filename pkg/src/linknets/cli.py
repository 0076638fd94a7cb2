"""Batch front end: ingestion, generation, verification, certification.

Exit codes: 0 when every requested certificate passes, 1 when a clause
fails (the report is still written), 2 on input or schema errors.  The
environment variable LT_FIELD overrides the scalar field ("rational" or
"prime[:p]").
"""

from __future__ import annotations

import os
import sys

import click

from . import certificates as certs
from . import chipfiring as cf
from . import io_schemas as io
from . import quiver as qv
from . import report as rpt
from . import setfn as sf
from .fields import QQ, FieldError, field_from_spec
from .generators import GeneratorError, generate_monomial, random_net, twist
from .nets import (
    NetError,
    TheoremViolation,
    net_polygons,
    vertex_pair,
    verify,
)

EXIT_OK = 0
EXIT_CLAUSE_FAILED = 1
EXIT_INPUT_ERROR = 2

_INPUT_ERRORS = (io.SchemaError, GeneratorError, NetError, FieldError, cf.GraphError, qv.QuiverError)


def _field_override(field_spec):
    spec = field_spec or os.environ.get("LT_FIELD")
    if spec is None:
        return None
    return field_from_spec(spec)


def _load_net(path, field_spec):
    return io.net_from_json(io.load_json(path), field_override=_field_override(field_spec))


def _writer(output, fmt, figures):
    return rpt.ReportWriter(output, fmt=fmt, figures=figures)


def _finish(writer, title, report, passed):
    text = writer.emit(title, report)
    if writer.out_path is None:
        click.echo(text, nl=False)
    else:
        for path in writer.written:
            click.echo(f"wrote {path}", err=True)
    return EXIT_OK if passed else EXIT_CLAUSE_FAILED


common_options = [
    click.option("--field", "field_spec", default=None, help="Override the scalar field: rational or prime[:p]."),
    click.option("-o", "--output", type=click.Path(), default=None, help="Report file; tables and figures are written alongside."),
    click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="json"),
    click.option("--figures/--no-figures", default=True, help="Render figures next to the report (needs -o)."),
    click.option("--jobs", type=int, default=1, help="Parallel work items for certificate assembly."),
]


def _with_common(fn):
    for opt in reversed(common_options):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Exact certificates for linked-net polytopes, tilings, and classes."""


@main.command("verify")
@click.argument("net_path", type=click.Path(exists=True))
@_with_common
def verify_cmd(net_path, field_spec, output, fmt, figures, jobs):
    """Check the presentation axioms on the stored fragment."""
    net = _load_net(net_path, field_spec)
    report = verify(net)
    payload = {
        "input": str(net_path),
        "kind": "verification",
        "vertices": list(net.ids),
        "arrow_types": net.n_types,
        "dimension": net.dim,
        "report": report.to_json(),
    }
    raise SystemExit(_finish(_writer(output, fmt, figures), "verification", payload, report.passed))


@main.command("analyze")
@click.argument("net_path", type=click.Path(exists=True))
@_with_common
def analyze_cmd(net_path, field_spec, output, fmt, figures, jobs):
    """Dimension tables, polytope vertices, extreme vertices, polygons."""
    net = _load_net(net_path, field_spec)
    report = verify(net)
    writer = _writer(output, fmt, figures)
    if not report.passed:
        payload = {
            "input": str(net_path),
            "kind": "analysis",
            "rejected": f"verification failed on clauses {report.failing_clauses()}",
            "report": report.to_json(),
        }
        raise SystemExit(_finish(writer, "analysis", payload, False))
    n = net.n_vertices
    pairs = [vertex_pair(net, v) for v in range(n)]
    tables = {}
    for v in range(n):
        entry = {
            "lower": list(pairs[v].lower.values),
            "upper": list(pairs[v].upper.values),
        }
        if n <= sf.MAX_VERTEX_ENUM:
            entry["polytope_vertices"] = [list(q) for q in sf.polytope_vertices(pairs[v])]
        tables[net.ids[v]] = entry
    extremes = {
        str(a): net.ids[net.index_of_vertex(v)]
        for a, v in qv.extreme_vertices(net.vertices).items()
    }
    polygons = [
        sorted(net.ids[net.index_of_vertex(v)] for v in poly.vertices)
        for poly in net_polygons(net)
    ]
    try:
        complex_obj = certs.reduction_complex(net)
        complex_json = complex_obj.to_json()
        complex_ok = True
    except TheoremViolation as exc:
        complex_obj = None
        complex_json = {"error": str(exc)}
        complex_ok = False
    payload = {
        "input": str(net_path),
        "kind": "analysis",
        "vertices": list(net.ids),
        "arrow_types": net.n_types,
        "dimension": net.dim,
        "subset_order": "masks index subsets of the ground set in vertex order",
        "tables": tables,
        "extreme_vertices": extremes,
        "polygons": polygons,
        "reduction_complex": complex_json,
    }
    writer.emit_csv("mu.csv", ["vertex", "mask", "subset", "lower", "upper"], rpt.mu_table_rows(net, pairs))
    writer.emit_figure("tiling.png", rpt.draw_tiling(net, pairs))
    if complex_obj is not None:
        writer.emit_figure("complex.png", rpt.draw_complex(complex_obj))
    raise SystemExit(_finish(writer, "analysis", payload, complex_ok))


@main.command("tiling")
@click.argument("net_path", type=click.Path(exists=True))
@click.option("--dilations", default="1,2,3", help="Comma-separated positive dilation factors.")
@_with_common
def tiling_cmd(net_path, dilations, field_spec, output, fmt, figures, jobs):
    """Assemble the simplex-tiling certificate."""
    net = _load_net(net_path, field_spec)
    try:
        dil = tuple(int(x) for x in dilations.split(","))
    except ValueError:
        raise io.SchemaError("--dilations", "expected comma-separated integers") from None
    if any(t < 1 for t in dil):
        raise io.SchemaError("--dilations", "dilations must be positive")
    writer = _writer(output, fmt, figures)
    try:
        cert = certs.tiling_certificate(net, dil, jobs=jobs)
    except TheoremViolation as exc:
        payload = {"input": str(net_path), "kind": "tiling", "rejected": str(exc)}
        raise SystemExit(_finish(writer, "tiling certificate", payload, False))
    payload = {"input": str(net_path), "kind": "tiling", "certificate": cert.to_json()}
    writer.emit_csv("coverage.csv", ["dilation", "vertex", "points", "simplex_points"], rpt.coverage_rows(cert))
    pairs = [vertex_pair(net, v) for v in range(net.n_vertices)]
    writer.emit_figure("tiling.png", rpt.draw_tiling(net, pairs))
    raise SystemExit(_finish(writer, "tiling certificate", payload, cert.passed))


@main.command("chow")
@click.argument("net_path", type=click.Path(exists=True))
@_with_common
def chow_cmd(net_path, field_spec, output, fmt, figures, jobs):
    """Partition the degree-r integer simplex by component."""
    net = _load_net(net_path, field_spec)
    writer = _writer(output, fmt, figures)
    try:
        chow = certs.chow_class(net)
    except TheoremViolation as exc:
        payload = {"input": str(net_path), "kind": "chow", "rejected": str(exc)}
        raise SystemExit(_finish(writer, "component classes", payload, False))
    payload = {"input": str(net_path), "kind": "chow", **chow.to_json()}
    writer.emit_csv("chow.csv", ["q", "components", "multiplicity"], rpt.chow_rows(chow))
    writer.emit_figure("chow.png", rpt.draw_chow(chow))
    raise SystemExit(_finish(writer, "component classes", payload, chow.passed))


@main.group("generate")
def generate_group():
    """Instance generators."""


@generate_group.command("monomial")
@click.argument("trop_path", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), required=True, help="Where to write the net JSON.")
@click.option("--field", "field_spec", default=None)
@click.option("--max-vertices", type=int, default=20)
def generate_monomial_cmd(trop_path, output, field_spec, max_vertices):
    """Build and verify the diagonal net of max-plus forms."""
    spec = io.trop_from_json(io.load_json(trop_path))
    field = _field_override(field_spec) or QQ
    net = generate_monomial(spec, field=field, max_vertices=max_vertices)
    io.dump_json(io.net_to_json(net), output)
    click.echo(f"wrote {output} ({len(net.vertices)} vertices, dimension {net.dim})", err=True)


@generate_group.command("random")
@click.option("--seed", type=int, required=True)
@click.option("--types", "n_types", type=int, default=None, help="Arrow-type count (n+1).")
@click.option("--dim", type=int, default=None, help="Vertex-space dimension (r+1).")
@click.option("--max-vertices", type=int, default=12)
@click.option("--twist-seed", type=int, default=None, help="Also conjugate by a seeded twist.")
@click.option("--field", "field_spec", default=None)
@click.option("-o", "--output", type=click.Path(), required=True)
@click.option("--trop-out", type=click.Path(), default=None, help="Also write the sampled forms.")
def generate_random_cmd(seed, n_types, dim, max_vertices, twist_seed, field_spec, output, trop_out):
    """Sample seeded verified instances by rejection over random forms."""
    field = _field_override(field_spec)
    kwargs = {"max_vertices": max_vertices}
    if field is not None:
        kwargs["field"] = field
    net, spec, attempts = random_net(seed, n_types=n_types, dim=dim, **kwargs)
    if twist_seed is not None:
        net = twist(net, seed=twist_seed)
    io.dump_json(io.net_to_json(net), output)
    if trop_out:
        io.dump_json(spec.to_json(), trop_out)
    click.echo(
        f"wrote {output} ({len(net.vertices)} vertices, dimension {net.dim}, "
        f"{attempts} attempts)",
        err=True,
    )


@main.command("chipfire")
@click.argument("graph_path", type=click.Path(exists=True))
@click.option("--divisor", required=True, help='Comma-separated chip counts, e.g. "2,0".')
@click.option("--reduced", type=int, default=None, help="Report the reduced divisor toward this vertex.")
@click.option("--linear-system", "linear_only", is_flag=True, help="List the effective members and their quiver tags.")
@click.option("--extreme", "extreme_only", is_flag=True, help="Report the extreme divisor per arrow type.")
@click.option("-o", "--output", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="json")
def chipfire_cmd(graph_path, divisor, reduced, linear_only, extreme_only, output, fmt):
    """Linear systems, reduced divisors, and their quiver structure."""
    graph = io.graph_from_json(io.load_json(graph_path))
    div = io.parse_divisor(divisor, graph.n_vertices)
    system = cf.linear_system(graph, div)
    payload = {
        "input": str(graph_path),
        "kind": "chipfire",
        "graph": graph.to_json(),
        "divisor": list(div),
        "members": len(system.divisors),
    }
    if linear_only or not (reduced is not None or extreme_only):
        payload["linear_system"] = [
            {"divisor": list(d), "coords": list(c)}
            for d, c in zip(system.divisors, system.coords)
        ]
    if reduced is not None:
        payload["reduced"] = {
            "vertex": reduced,
            "divisor": list(cf.reduced_divisor(graph, div, reduced)),
        }
    if extreme_only:
        payload["extreme"] = {
            str(a): list(d) for a, d in cf.extreme_divisors(system).items()
        }
    writer = _writer(output, fmt, figures=False)
    raise SystemExit(_finish(writer, "chip firing", payload, True))


@main.group("quiver")
def quiver_group():
    """Hull, shadow, and extreme-vertex utilities."""


@quiver_group.command("hull")
@click.argument("vertices_path", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), default=None)
def quiver_hull_cmd(vertices_path, output):
    verts = io.vertex_set_from_json(io.load_json(vertices_path))
    hull = sorted(qv.hull(verts))
    payload = {"kind": "hull", "input_vertices": [list(v) for v in sorted(set(verts))], "hull": [list(v) for v in hull]}
    writer = _writer(output, "json", figures=False)
    raise SystemExit(_finish(writer, "hull", payload, True))


@quiver_group.command("shadow")
@click.argument("vertices_path", type=click.Path(exists=True))
@click.option("--at", "at", required=True, help='Target vertex, e.g. "5,0".')
@click.option("-o", "--output", type=click.Path(), default=None)
def quiver_shadow_cmd(vertices_path, at, output):
    verts = io.vertex_set_from_json(io.load_json(vertices_path))
    target = tuple(int(x) for x in at.split(","))
    if len(target) != len(verts[0]):
        raise io.SchemaError("--at", f"expected {len(verts[0])} coordinates")
    shadow = qv.shadow(target, verts)
    payload = {"kind": "shadow", "target": list(qv.normalize(target)), "shadow": list(shadow)}
    writer = _writer(output, "json", figures=False)
    raise SystemExit(_finish(writer, "shadow", payload, True))


@quiver_group.command("extreme")
@click.argument("vertices_path", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), default=None)
def quiver_extreme_cmd(vertices_path, output):
    verts = io.vertex_set_from_json(io.load_json(vertices_path))
    ext = qv.extreme_vertices(verts)
    payload = {"kind": "extreme", "extreme": {str(a): list(v) for a, v in sorted(ext.items())}}
    writer = _writer(output, "json", figures=False)
    raise SystemExit(_finish(writer, "extreme vertices", payload, True))


def run():
    try:
        main(standalone_mode=False)
    except SystemExit as exc:
        raise exc
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_INPUT_ERROR)
    except click.exceptions.Abort:
        sys.exit(EXIT_INPUT_ERROR)
    except _INPUT_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


if __name__ == "__main__":
    run()
