"""Command-line front end: a thin client of the verification service.

Every subcommand builds one request, sends it to the FastAPI app (in-process
by default, or to a remote server via --server), and writes the response to
files.  Exit status: 0 on success with all checks passing, 1 when any check
fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any

from .errors import ParseError

logger = logging.getLogger("transitpoly.cli")

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ServiceClient:
    """HTTP client for the service; in-process ASGI when no server is given."""

    def __init__(self, server: str | None = None):
        if server:
            import httpx
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient
            from .service import app
            self._client = TestClient(app, raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        resp = self._client.post(path, json=payload)
        body = resp.json()
        if resp.status_code != 200:
            raise RuntimeError(f"{path}: {body.get('error', resp.status_code)}: "
                               f"{body.get('detail', body)}")
        return body

    def get(self, path: str) -> dict:
        resp = self._client.get(path)
        resp.raise_for_status()
        return resp.json()


def _write_output(data: Any, out: str | None, fmt: str = "json") -> None:
    if fmt == "json":
        text = json.dumps(data, indent=2, sort_keys=False) + "\n"
    else:
        text = data  # already formatted (csv)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _vertices_to_csv(vertices: list[dict]) -> str:
    ncoords = 0
    for v in vertices:
        if v.get("affine"):
            ncoords = max(ncoords, len(v["affine"]))
    header = ["incidence", "kind"]
    for i in range(1, ncoords + 1):
        header += [f"y{i}_exact", f"y{i}_approx"]
    lines = [",".join(header)]
    for v in vertices:
        row = [" ".join(v["incidence"]), v["kind"]]
        aff = v.get("affine")
        for i in range(ncoords):
            if aff is None:
                row += ["", ""]
            else:
                row += [aff[i]["exact"], aff[i]["approx"]]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _parse_samples(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    conf: dict[str, str] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"malformed config line: {line!r}")
        key, _, value = line.partition("=")
        conf[key.strip().replace("_", "-")] = value.strip()
    return conf


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transitpoly",
        description="Exact certification of the deforming "
                    "hyperbolic/AdS/half-pipe polytope family.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    parser.add_argument("--config", default=None,
                        help="flat key=value config file; flags win")
    sub = parser.add_subparsers(dest="command")

    p_verify = sub.add_parser("verify", help="run certification checks")
    p_verify.add_argument("--suite", default="all",
                          help="'all' or comma-separated check names")
    p_verify.add_argument("--t", default=None,
                          help="comma-separated t samples (default: built-in set)")
    p_verify.add_argument("--out", default=None, help="certificate output path")
    p_verify.add_argument("--extended-range", action="store_true")

    p_vertices = sub.add_parser("vertices", help="vertex table of a system")
    p_vertices.add_argument("--t", default="1/2")
    p_vertices.add_argument("--system", default="main",
                            choices=["polytope", "main", "fundamental", "octahedron", "cell24",
                                     "slice", "octahedron-slice"])
    p_vertices.add_argument("--rescaled", action="store_true", default=True)
    p_vertices.add_argument("--unrescaled", dest="rescaled", action="store_false")
    p_vertices.add_argument("--format", default="json", choices=["json", "csv"])
    p_vertices.add_argument("--out", default=None)
    p_vertices.add_argument("--extended-range", action="store_true")

    p_lattice = sub.add_parser("lattice", help="face lattice of a system")
    p_lattice.add_argument("--t", default="1/2")
    p_lattice.add_argument("--system", default="main",
                           choices=["polytope", "main", "fundamental", "octahedron", "cell24",
                                    "slice", "octahedron-slice"])
    p_lattice.add_argument("--out", default=None)
    p_lattice.add_argument("--extended-range", action="store_true")

    p_angles = sub.add_parser("angles", help="dihedral angle ledger of the ridges")
    p_angles.add_argument("--t", default="1/2")
    p_angles.add_argument("--out", default=None)

    p_classify = sub.add_parser("classify", help="causal types of the 22 walls")
    p_classify.add_argument("--t", default="-1/2")
    p_classify.add_argument("--out", default=None)

    p_limits = sub.add_parser("limits", help="one-sided limits of the rescaled "
                                             "reflection families at t = 0")
    p_limits.add_argument("--order", type=int, default=0, choices=[0, 1, 2])
    p_limits.add_argument("--families", default=None,
                          help="comma-separated wall labels (default: all)")
    p_limits.add_argument("--out", default=None)

    p_hol = sub.add_parser("holonomy", help="meridian holonomy data")
    p_hol.add_argument("--t", default="1/2")
    p_hol.add_argument("--out", default=None)

    p_dump = sub.add_parser("dump", help="emit a catalogue table")
    p_dump.add_argument("--table", required=True,
                        choices=["octahedron", "walls", "walls-rescaled",
                                 "domain-vertices", "aux-mirrors", "cell24"])
    p_dump.add_argument("--t", default="1/2")
    p_dump.add_argument("--format", default="json", choices=["json", "csv"])
    p_dump.add_argument("--out", default=None)
    p_dump.add_argument("--extended-range", action="store_true")

    p_plot = sub.add_parser("plotdata", help="affine frame files for rendering")
    p_plot.add_argument("--object", default="polytope",
                        choices=["polytope", "main", "fundamental", "octahedron", "cell24",
                                 "slice", "octahedron-slice"])
    p_plot.add_argument("--t", default="1/2")
    p_plot.add_argument("--chart", default="affine", choices=["affine"])
    p_plot.add_argument("--out", default=None)
    p_plot.add_argument("--extended-range", action="store_true")

    p_cell = sub.add_parser("cell24", help="certify the t = 1 ideal 24-cell")
    p_cell.add_argument("--out", default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _apply_config(args: argparse.Namespace, conf: dict[str, str],
                  argv: list[str]) -> None:
    """Config values fill in flags the user did not pass explicitly."""
    explicit = {a.split("=")[0].lstrip("-") for a in argv if a.startswith("--")}
    for key, value in conf.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or key in explicit:
            continue
        current = getattr(args, attr)
        if isinstance(current, bool):
            setattr(args, attr, value.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, attr, int(value))
        else:
            setattr(args, attr, value)


_VALUE_FLAGS = {"--t", "--suite", "--families"}


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join '--t -1/2' into '--t=-1/2' so argparse does not read it as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _merge_negative_values(list(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(
        level=_LOG_LEVELS.get(os.environ.get("TRANSIT_LOG", "error"), logging.ERROR))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_USAGE
    try:
        conf = _load_config(args.config)
        _apply_config(args, conf, argv)
    except (ParseError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "serve":
        import uvicorn
        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        client = ServiceClient(args.server)
        return _dispatch(args, client)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace, client: ServiceClient) -> int:
    if args.command == "verify":
        checks = None if args.suite == "all" else _parse_samples(args.suite)
        payload: dict[str, Any] = {"extended_range": args.extended_range}
        if checks is not None:
            payload["checks"] = checks
        if args.t:
            payload["t_samples"] = _parse_samples(args.t)
        body = client.post("/verify", payload)
        _write_output(body["certificate"], args.out)
        for entry in body["certificate"]:
            print(f"{entry['status'].upper():4}  {entry['name']:24} "
                  f"{entry['duration_ms']:>7} ms")
        print("all checks passed" if body["all_pass"] else "FAILURES present")
        return EXIT_OK if body["all_pass"] else EXIT_FAIL

    if args.command == "vertices":
        body = client.post("/vertices", {
            "t": args.t, "system": args.system, "rescaled": args.rescaled,
            "extended_range": args.extended_range})
        if args.format == "csv":
            _write_output(_vertices_to_csv(body["vertices"]), args.out, fmt="csv")
        else:
            _write_output(body, args.out)
        print(f"census: {body['census']}")
        return EXIT_OK

    if args.command == "lattice":
        body = client.post("/lattice", {
            "t": args.t, "system": args.system,
            "extended_range": args.extended_range})
        _write_output(body, args.out)
        print(f"f-vector: {body['lattice']['f_vector']}")
        return EXIT_OK

    if args.command == "angles":
        body = client.post("/angles", {"t": args.t})
        _write_output(body, args.out)
        non_right = [r for r in body["ridges"] if r.get("right") is False]
        print(f"ridges: {len(body['ridges'])}, non-right: {len(non_right)}")
        return EXIT_OK

    if args.command == "classify":
        body = client.post("/classify", {"t": args.t})
        _write_output(body, args.out)
        return EXIT_OK

    if args.command == "limits":
        payload = {"order": args.order}
        if args.families:
            payload["families"] = _parse_samples(args.families)
        body = client.post("/limits", payload)
        _write_output(body, args.out)
        equal = all(f["equal"] for f in body["families"].values())
        print(f"order {args.order}: one-sided limits "
              f"{'agree' if equal else 'DIFFER'} for {len(body['families'])} families")
        return EXIT_OK

    if args.command == "holonomy":
        body = client.post("/holonomy", {"t": args.t})
        _write_output(body, args.out)
        print(f"pairs: {len(body['pairs'])}, edge group order: "
              f"{body['edge_group_order']}")
        return EXIT_OK

    if args.command == "dump":
        body = client.post("/dump", {"table": args.table, "t": args.t,
                                     "extended_range": args.extended_range})
        if args.format == "csv":
            lines = ["label," + ",".join(
                f"c{i}_exact,c{i}_approx" for i in range(_dump_width(body)))]
            for key, coords in body["rows"].items():
                cells = [key]
                for c in coords:
                    cells += [c["exact"], c["approx"]]
                lines.append(",".join(cells))
            _write_output("\n".join(lines) + "\n", args.out, fmt="csv")
        else:
            _write_output(body, args.out)
        return EXIT_OK

    if args.command == "plotdata":
        body = client.post("/plotdata", {
            "object": args.object, "t": args.t, "chart": args.chart,
            "extended_range": args.extended_range})
        _write_output(body, args.out)
        print(f"vertices: {len(body['vertices'])}, edges: {len(body['edges'])}, "
              f"facets: {len(body['facets'])}")
        return EXIT_OK

    if args.command == "cell24":
        body = client.post("/cell24", {})
        _write_output(body, args.out)
        print(f"cell24: {body['result']['status']}")
        return EXIT_OK if body["result"]["status"] == "pass" else EXIT_FAIL

    return EXIT_USAGE


def _dump_width(body: dict) -> int:
    rows = body.get("rows", {})
    return max((len(v) for v in rows.values()), default=0)


if __name__ == "__main__":
    sys.exit(main())
