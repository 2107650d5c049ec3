"""Command-line front end.

Every subcommand reads one diagram (DSL or JSON; ``-`` for standard input)
and prints a deterministic report.  Verdicts are part of the payload; the
exit status only says whether the tool could answer:

    0  success          1  usage error
    2  invalid diagram  3  precondition failure (e.g. not fibered)
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .calculus import cut, hat_gamma, is_fibered, linking_number, linking_oracle, splice
from .contact import Construction, assemble_construction
from .diagram import SpliceDiagram, require_valid, validate
from .dsl import from_json, parse_diagram, serialize_diagram
from .errors import DiagramSyntaxError, GlueError, InvalidDiagramError, NotFiberedError, PreconditionError
from .normalize import check_s3_cabling, invert, is_type_arrow_arrow, minimize
from .seifert import basis_change, node_data
from .tightness import TightnessVerdict, decide_tight, milnor_fg, per_piece

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- rendering --------------------------------------------------------------


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _svg(con: Construction, size: int = 220, samples: int = 200) -> str:
    """One panel per curve, drawn in the (-h1, h2) plane."""
    cols = 3
    rows = max(1, math.ceil(len(con.curves) / cols))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cols * size}" height="{rows * size}">',
    ]
    for k, pc in enumerate(con.curves):
        ox, oy = (k % cols) * size, (k // cols) * size
        _, x, y = pc.curve.sample(samples)
        scale = 0.42 * size / max(float(np.max(np.hypot(x, y))), 1e-300)
        cx, cy = ox + size / 2, oy + size / 2
        pts = " ".join(f"{cx + scale * a:.2f},{cy - scale * b:.2f}" for a, b in zip(x, y))
        out.append(f'  <g id="{pc.label}">')
        out.append(f'    <line x1="{ox}" y1="{cy}" x2="{ox + size}" y2="{cy}" stroke="#bbb"/>')
        out.append(f'    <line x1="{cx}" y1="{oy}" x2="{cx}" y2="{oy + size}" stroke="#bbb"/>')
        out.append(f'    <polyline fill="none" stroke="#036" points="{pts}"/>')
        out.append(f'    <text x="{ox + 4}" y="{oy + 14}" font-size="11">{pc.role} {pc.label}</text>')
        out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _csv(con: Construction, samples: int = 200) -> str:
    lines = ["label,role,r,x,y"]
    for pc in con.curves:
        r, x, y = pc.curve.sample(samples)
        lines += [f"{pc.label},{pc.role},{a:.6g},{b:.12g},{c:.12g}" for a, b, c in zip(r, x, y)]
    return "\n".join(lines) + "\n"


def _text(obj) -> str:
    if isinstance(obj, TightnessVerdict):
        head = obj.verdict.value
        if obj.sign is not None:
            head += f" (all multiplicities {'positive' if obj.sign > 0 else 'negative'})"
        if obj.witness is not None:
            head += f"; witness {obj.witness.component} ({obj.witness.reason})"
        if not obj.fibered:
            head += "; reversed multilink is not fibered, sign rule only"
        return head + ("\n" + obj.hat.ascii() if obj.hat is not None else "") + "\n"
    if isinstance(obj, Construction):
        lines = [f"style {obj.style}, min contact {obj.min_contact:.3e}, monotone {obj.all_monotone}"]
        for pc in obj.curves:
            rep = pc.report
            extra = f", Lutz at r={pc.lutz:.12f}" if pc.lutz is not None else ""
            lines.append(
                f"  {pc.role:8s} {pc.label:10s} m={pc.multiplicity:+d} "
                f"arg [{rep.arg_min:.4f}, {rep.arg_max:.4f}]{extra}"
            )
        return "\n".join(lines) + "\n"
    if hasattr(obj, "ascii"):
        return obj.ascii() + "\n"
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return _json(obj)


def render_report(obj, format: str = "json", diagram: SpliceDiagram | None = None) -> str:
    if format == "json":
        return _json(obj.to_dict() if hasattr(obj, "to_dict") else obj)
    if format == "text":
        return _text(obj)
    if format == "dot":
        if diagram is None:
            raise ValueError("dot output needs the diagram")
        hat = obj if hasattr(obj, "vertex_sign") else getattr(obj, "hat", None)
        return serialize_diagram(diagram, "dot", hat=hat)
    if format == "svg":
        if not isinstance(obj, Construction):
            raise ValueError("svg output is only available for contact reports")
        return _svg(obj)
    if format == "csv":
        if not isinstance(obj, Construction):
            raise ValueError("csv output is only available for contact reports")
        return _csv(obj)
    raise ValueError(f"unsupported format {format!r}")


# -- input ------------------------------------------------------------------


def read_diagram(path: str) -> SpliceDiagram:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_diagram(text)


def _valid(path: str) -> SpliceDiagram:
    d = read_diagram(path)
    require_valid(d)
    return d


def _pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.replace("--", ",").split(",") if p.strip()]
    if len(parts) != 2:
        raise UsageError(f"expected two vertex ids, got {text!r}")
    return parts[0], parts[1]


# -- subcommands ------------------------------------------------------------


def cmd_validate(a):
    rep = validate(read_diagram(a.input))
    return (EXIT_OK if rep.ok else EXIT_INVALID), _json(rep.to_dict())


def cmd_node_data(a):
    if a.weights:
        ws = [int(w) for w in a.weights.split(",")]
    else:
        if not a.input or not a.vertex:
            raise UsageError("give --weights, or a diagram and --vertex")
        d = _valid(a.input)
        ws = list(d.weights(a.vertex).values())
    nd = node_data(ws)
    out = nd.to_dict()
    out["basis"] = []
    for i in range(1, nd.k + 1):
        bc = basis_change(nd, i)
        out["basis"].append({"to_ql": [list(r) for r in bc.to_ql], "to_ml": [list(r) for r in bc.to_ml]})
    return EXIT_OK, _json(out)


def cmd_normalize(a):
    d = _valid(a.input)
    small, trace = minimize(d)
    if a.format != "json":
        return EXIT_OK, serialize_diagram(small, a.format)
    out = {
        "diagram": serialize_diagram(small, "dsl"),
        "type_arrow_arrow": is_type_arrow_arrow(small),
        "trace": trace.to_list(),
    }
    return EXIT_OK, _json(out)


def cmd_invert(a):
    return EXIT_OK, serialize_diagram(invert(_valid(a.input)), a.format)


def cmd_check_s3(a):
    return EXIT_OK, _json({"answer": check_s3_cabling(_valid(a.input)).value})


def cmd_link(a):
    d = _valid(a.input)
    if a.pair:
        x, y = _pair(a.pair)
        return EXIT_OK, _json({"x": x, "y": y, "lk": linking_number(d, x, y), "oracle": linking_oracle(d, x, y)})
    ts = d.terminals
    rows = []
    for i, x in enumerate(ts):
        for y in ts[i + 1 :]:
            rows.append({"x": x, "y": y, "lk": linking_number(d, x, y), "oracle": linking_oracle(d, x, y)})
    return EXIT_OK, _json({"pairs": rows})


def cmd_fiber_check(a):
    return EXIT_OK, _json(is_fibered(_valid(a.input)).to_dict())


def cmd_hat(a):
    d = _valid(a.input)
    hat = hat_gamma(d)
    return EXIT_OK, render_report(hat, a.format, diagram=d)


def cmd_cut(a):
    d = _valid(a.input)
    res = cut(d, _pair(a.edge))
    return EXIT_OK, _json(res.to_dict())


def cmd_splice(a):
    d1, d2 = _valid(a.input), _valid(a.other)
    return EXIT_OK, serialize_diagram(splice(d1, a.x1, d2, a.x2), a.format)


def cmd_tight(a):
    d = _valid(a.input)
    v = decide_tight(d, assume_s3=a.assume_s3)
    if a.per_piece and a.format == "json":
        out = v.to_dict()
        out["pieces"] = [p.to_dict() for p in per_piece(d)]
        return EXIT_OK, _json(out)
    return EXIT_OK, render_report(v, a.format, diagram=d)


def cmd_milnor_fg(a):
    d = _valid(a.input)
    g = [x for x in (a.g or "").split(",") if x]
    v = milnor_fg(d, g, assume_s3=a.assume_s3)
    return EXIT_OK, render_report(v, a.format, diagram=d)


def cmd_contact_verify(a):
    d = _valid(a.input)
    con = assemble_construction(d, a.style, grid=a.grid)
    if a.format == "json":
        return EXIT_OK, _json(con.to_dict(with_curves=a.curves))
    return EXIT_OK, render_report(con, a.format)


def cmd_export(a):
    return EXIT_OK, serialize_diagram(_valid(a.input), a.format)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splice-forge", description="Splice diagrams, tightness and contact-form checks.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help, input=True):
        sp = sub.add_parser(name, help=help)
        if input:
            sp.add_argument("input", help="diagram file (DSL or JSON), '-' for stdin")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "structural validation report")
    sp = add("node-data", cmd_node_data, "Seifert invariants of one inner vertex", input=False)
    sp.add_argument("input", nargs="?")
    sp.add_argument("--vertex")
    sp.add_argument("--weights", help="comma-separated weights, e.g. 2,3,5")
    sp = add("normalize", cmd_normalize, "reduce by moves 3 and 6")
    sp.add_argument("--format", choices=["json", "dsl", "dot"], default="json")
    sp = add("invert", cmd_invert, "negate every multiplicity")
    sp.add_argument("--format", choices=["dsl", "json", "dot"], default="dsl")
    add("check-s3", cmd_check_s3, "sufficient test that the ambient manifold is S^3")
    sp = add("link", cmd_link, "linking numbers (path formula and homology oracle)")
    sp.add_argument("--pair", help="two leaves, e.g. a1,b2")
    add("fiber-check", cmd_fiber_check, "fiberedness of the multilink")
    sp = add("hat", cmd_hat, "signs of the hat decoration")
    sp.add_argument("--format", choices=["json", "text", "dot"], default="json")
    sp = add("cut", cmd_cut, "cut along an inner edge")
    sp.add_argument("--edge", required=True, help="inner edge, e.g. u,v")
    sp = add("splice", cmd_splice, "splice two diagrams at two leaves")
    sp.add_argument("x1")
    sp.add_argument("other")
    sp.add_argument("x2")
    sp.add_argument("--format", choices=["dsl", "json", "dot"], default="dsl")
    sp = add("tight", cmd_tight, "decide tightness of the compatible contact structure")
    sp.add_argument("--assume-s3", action="store_true")
    sp.add_argument("--per-piece", action="store_true")
    sp.add_argument("--format", choices=["json", "text", "dot"], default="json")
    sp = add("milnor-fg", cmd_milnor_fg, "tightness for f * conj(g)")
    sp.add_argument("--g", default="", help="comma-separated arrowheads belonging to g")
    sp.add_argument("--assume-s3", action="store_true")
    sp.add_argument("--format", choices=["json", "text", "dot"], default="json")
    sp = add("contact-verify", cmd_contact_verify, "build and check explicit contact forms")
    sp.add_argument("--style", choices=["lemma33", "tw"], default="tw")
    sp.add_argument("--grid", type=int, default=1000)
    sp.add_argument("--curves", action="store_true", help="include curve parameters in JSON")
    sp.add_argument("--format", choices=["json", "text", "svg", "csv"], default="json")
    sp = add("export", cmd_export, "re-serialise a diagram")
    sp.add_argument("--format", choices=["dsl", "json", "dot"], default="dsl")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand")
        code, text = args.fn(args)
    except UsageError as exc:
        out.write(_json({"error": "usage", "message": str(exc)}))
        return EXIT_USAGE
    except DiagramSyntaxError as exc:
        out.write(_json({"error": "syntax", "message": str(exc), "line": exc.line, "column": exc.column}))
        return EXIT_INVALID
    except InvalidDiagramError as exc:
        payload = {"error": "invalid diagram", "message": str(exc)}
        if exc.report is not None:
            payload["violations"] = exc.report.to_dict()["violations"]
        out.write(_json(payload))
        return EXIT_INVALID
    except NotFiberedError as exc:
        out.write(_json({"error": "not fibered", "l_values": dict(sorted(exc.l_values.items()))}))
        return EXIT_PRECONDITION
    except (PreconditionError, GlueError, ValueError, KeyError) as exc:
        out.write(_json({"error": "precondition", "message": str(exc)}))
        return EXIT_PRECONDITION
    out.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
