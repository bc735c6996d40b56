"""``tropitor`` command line: enumerate, jacobian, torelli, verify.

Exit codes: 0 success or true verdict, 1 failed verification, 2 false
verdict, 3 undetermined, 4 capacity exceeded, 5 input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from . import fixtures as fx
from .exact import fmt
from .graph import GraphError
from .homology import cycle_basis
from .io import (InputError, chain_to_signed, complex_to_dot, complex_to_json, curve_parts, dumps,
                 graph_to_dot, graph_to_json, matroid_to_json, quadform_to_json)
from .matroid import CapacityError, MatroidError
from .moduli import GENUS_CAP, codim1_type, enumerate_complex
from .parallel import worker_count
from .quadform import (QuadForm, arith_equiv_bruteforce, definite_reduction, format_linear, jacobian,
                       symbolic_jacobian, voronoi_polytope)
from .torelli import (GenusMismatch, TropicalCurve, metric_class, planar_image_test, same_jacobian,
                      torelli_cell_image)

EXIT_OK, EXIT_FAILED, EXIT_FALSE, EXIT_UNDETERMINED, EXIT_CAPACITY, EXIT_INPUT = 0, 1, 2, 3, 4, 5


@dataclass
class RunManifest:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    config: dict = field(default_factory=dict)
    version: str = __version__
    seconds: float = 0.0
    outputs: dict[str, str] = field(default_factory=dict)  # file -> sha256


def _sha(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Output:
    """Collects primary outputs; writes them in order to --out when given."""

    def __init__(self, out_dir: str | None, manifest: RunManifest):
        self.dir = Path(out_dir) if out_dir else None
        self.manifest = manifest
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)

    def text(self, name: str, body: str) -> None:
        if self.dir:
            data = body.encode()
            (self.dir / name).write_bytes(data)
            self.manifest.outputs[name] = _sha(data)

    def figure(self, name: str, draw) -> None:
        if self.dir:
            draw(self.dir / name)

    def finish(self) -> None:
        if self.dir:
            (self.dir / "manifest.json").write_text(dumps(asdict(self.manifest)))


# ---------------------------------------------------------------------------
# input resolution

def resolve_curve(arg: str, fixture_dir: str | None, manifest: RunManifest):
    path = Path(arg)
    if not path.exists() and fixture_dir:
        for cand in (Path(fixture_dir) / arg, Path(fixture_dir) / f"{arg}.json"):
            if cand.exists():
                path = cand
                break
    if path.exists():
        data = path.read_bytes()
        manifest.inputs[str(path)] = _sha(data)
        text = data.decode()
    else:
        try:
            text = fx.data_text(arg.removesuffix(".json"))
        except (FileNotFoundError, OSError):
            raise InputError(f"no such curve file or packaged fixture: {arg}") from None
        manifest.inputs[f"fixture:{arg}"] = _sha(text.encode())
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{arg}: invalid JSON ({exc})") from None
    return curve_parts(obj)


def _tsv(rows: list[list]) -> str:
    return "".join("\t".join(map(str, r)) + "\n" for r in rows)


def _csv(rows: list[list]) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands

def cmd_enumerate(args, manifest: RunManifest, out: Output) -> int:
    X = enumerate_complex(args.kind, args.genus, args.cap)
    maximal = X.maximal_cells()
    dims = X.dimension_counts()
    top = max(dims)
    summary = [["kind", args.kind], ["genus", X.genus], ["cells", len(X.cells)],
               ["max_dim", top], ["maximal_cells", len(maximal)],
               ["maximal_dims", ",".join(str(c.dim) for c in maximal)]]
    for d in sorted(dims):
        summary.append([f"dim_{d}", dims[d]])
    if args.kind == "curves":
        types = Counter(codim1_type(c.payload) for c in X.cells if c.dim == top - 1)
        summary += [["codim1_type_a", types.get("a", 0)], ["codim1_type_b", types.get("b", 0)],
                    ["codim1_unclassified", types.get(None, 0)]]
    line = f"{len(X.cells)} cells; max dim {top}; {len(maximal)} maximal"
    cells_rows = [["id", "dim", "stabilizer_order", "faces", "cofaces", "key"]]
    for c in X.cells:
        cells_rows.append([c.id, c.dim, c.stabilizer_order if c.stabilizer_order is not None else "",
                           len(X.faces_of(c.id)), len(X.cofaces_of(c.id)), c.key])
    body_json = dumps(complex_to_json(X))
    body_dot = complex_to_dot(X)
    out.text("complex.json", body_json)
    out.text("poset.dot", body_dot)
    out.text("summary.tsv", _tsv(summary))
    out.text("cells.csv", _csv(cells_rows))

    def draw(path):
        from .plotting import hasse_diagram
        hasse_diagram(X, path)
    out.figure("hasse.png", draw)
    if args.format == "json":
        sys.stdout.write(body_json)
    elif args.format == "dot":
        sys.stdout.write(body_dot)
    else:
        sys.stdout.write(_tsv(summary))
        print(line)
    return EXIT_OK


def jacobian_report(G, lengths, basis) -> dict:
    used = basis if basis is not None else cycle_basis(G)
    rep = {"genus": G.n_edges - G.n_vertices + 1 + G.total_weight,
           "basis": [chain_to_signed(G, b) for b in used],
           "basis_source": "explicit" if basis is not None else "auto"}
    if lengths is None:
        sym = symbolic_jacobian(G, used)
        rep["symbolic"] = True
        rep["matrix"] = [[format_linear(x) for x in row] for row in sym]
        rep["rank"] = len(used)
    else:
        Q = jacobian(G, lengths, used)
        rep["symbolic"] = False
        rep.update(quadform_to_json(Q))
        rep["rank"] = Q.rank
    rep["weight_block"] = G.total_weight
    return rep


def cmd_jacobian(args, manifest: RunManifest, out: Output) -> int:
    G, lengths, basis = resolve_curve(args.curve, args.fixtures, manifest)
    if args.basis == "explicit" and basis is None:
        raise InputError("--basis explicit needs a 'basis' field in the curve file")
    if args.basis == "auto":
        basis = None
    rep = jacobian_report(G, lengths, basis)
    body = dumps(rep)
    out.text("jacobian.json", body)
    rows = [[x for x in row] for row in rep["matrix"]]
    out.text("jacobian.tsv", _tsv(rows))
    if not rep["symbolic"]:
        Q = QuadForm.of(rep["matrix"])
        h, core = definite_reduction(Q)
        if core.g in (2, 3):
            def draw(path):
                from .plotting import polytope_plot
                polytope_plot({"Voronoi cell": voronoi_polytope(core)}, path,
                              title="Voronoi cell of the definite part")
            out.figure("voronoi.png", draw)
    if args.format == "table":
        sys.stdout.write(_tsv(rows))
    elif args.format == "dot":
        sys.stdout.write(graph_to_dot(G))
    else:
        sys.stdout.write(body)
    return EXIT_OK


def cmd_torelli(args, manifest: RunManifest, out: Output) -> int:
    curves = []
    for arg in args.curves:
        G, lengths, _ = resolve_curve(arg, args.fixtures, manifest)
        if lengths is None:
            raise InputError(f"{arg}: Torelli needs numeric edge lengths")
        curves.append(TropicalCurve(G, lengths))
    verdict: dict = {}
    code = EXIT_OK
    if len(curves) == 1:
        C = curves[0]
        m, dim = torelli_cell_image(C.graph)
        verdict = {"genus": C.genus, "graph": graph_to_json(C.graph),
                   "jacobian": quadform_to_json(jacobian(C.graph, C.lengths)),
                   "cell_image": {"matroid": matroid_to_json(m), "dimension": dim},
                   "metric_class": metric_class(C).token}
        if args.planar:
            pv = planar_image_test(C)
            verdict["planar"] = {"planar": pv.planar, "cographic_is_graphic": pv.cographic_is_graphic,
                                 "agree": pv.agree}
            if not pv.agree:
                code = EXIT_UNDETERMINED
            elif not pv.planar:
                code = EXIT_FALSE
    elif len(curves) == 2:
        C1, C2 = curves
        if args.method == "oracle":
            if C1.genus != C2.genus:
                raise GenusMismatch(f"genus {C1.genus} vs {C2.genus}")
            res = arith_equiv_bruteforce(jacobian(C1.graph, C1.lengths), jacobian(C2.graph, C2.lengths),
                                         args.bound)
            verdict = {"method": "oracle", "status": res.status, "witness": res.witness,
                       "invariants": {k: _jsonable(v) for k, v in res.invariants.items()}}
            code = {"equivalent": EXIT_OK, "inequivalent": EXIT_FALSE}.get(res.status, EXIT_UNDETERMINED)
        else:
            v = same_jacobian(C1, C2)
            verdict = {"method": "matroid", "same_jacobian": v.equal,
                       "certificate": _jsonable(v.certificate)}
            if "bijection" in v.certificate:
                verdict["certificate"]["bijection"] = [[a, b] for a, b in v.certificate["bijection"].items()]
            code = EXIT_OK if v.equal else EXIT_FALSE
    else:
        raise InputError("torelli takes one or two curve files")
    body = dumps(verdict)
    out.text("verdict.json", body)
    sys.stdout.write(body)
    return code


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k if not hasattr(k, "numerator") else fmt(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "numerator") and not isinstance(x, (bool, int)):
        return fmt(x)
    return x


def cmd_verify(args, manifest: RunManifest, out: Output) -> int:
    from .verify import run_suites
    run = run_suites(args.suite, args.genus_cap, args.seed)
    rows = [["suite", "check", "status", "seconds", "detail"]]
    for c in run.checks:
        rows.append([c.suite, c.name, "PASS" if c.ok else "FAIL", f"{c.seconds:.2f}", c.detail])
    out.text("verify.tsv", _tsv(rows))
    sys.stdout.write(_tsv(rows))
    print(f"{sum(c.ok for c in run.checks)}/{len(run.checks)} checks passed")
    return EXIT_OK if run.ok else EXIT_FAILED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropitor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--format", choices=("json", "dot", "table"), default=fmt_default)
        sp.add_argument("--out", help="directory for files, figures and the run manifest")
        sp.add_argument("--fixtures", help="directory searched for curve files given by name")

    e = sub.add_parser("enumerate", help="enumerate a cell complex")
    e.add_argument("kind", choices=("curves", "cographic", "graphic", "gr-cogr"))
    e.add_argument("--genus", type=int, required=True)
    e.add_argument("--cap", type=int, default=GENUS_CAP, help="largest genus allowed")
    common(e, "table")

    j = sub.add_parser("jacobian", help="Jacobian form of a curve")
    j.add_argument("curve")
    j.add_argument("--basis", choices=("auto", "explicit", "file"), default="file",
                   help="file: use the basis in the curve file when present")
    common(j)

    t = sub.add_parser("torelli", help="Torelli point, cell image, pair comparison or planarity")
    t.add_argument("curves", nargs="+")
    t.add_argument("--planar", action="store_true")
    t.add_argument("--method", choices=("matroid", "oracle"), default="matroid")
    t.add_argument("--bound", type=int, default=2, help="entry bound of the GL_g(Z) search")
    common(t)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", choices=("all", "graph", "matroid", "quadform", "moduli", "torelli"),
                   default="all")
    v.add_argument("--genus-cap", "--genus", dest="genus_cap", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    common(v, "table")
    return p


COMMANDS = {"enumerate": cmd_enumerate, "jacobian": cmd_jacobian, "torelli": cmd_torelli,
            "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = {k: v for k, v in vars(args).items() if k not in ("command", "out")}
    config["threads"] = worker_count()
    manifest = RunManifest(args.command, config=config)
    out = Output(args.out, manifest)
    t = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, manifest, out)
    except CapacityError as exc:
        print(f"tropitor: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, GraphError, MatroidError, GenusMismatch, ValueError, OSError) as exc:
        print(f"tropitor: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    manifest.seconds = round(time.perf_counter() - t, 3)
    out.finish()
    return code


if __name__ == "__main__":
    sys.exit(main())
