"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 unusable input (arguments or
mesh file), 3 mesh rejected by validation.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .basisgen import SCALINGS, build_basis
from .c1space import algorithm1, dimension
from .corpus import BUNDLED, bundled_mesh
from .geometry import MeshError, MeshFormatError, load_mesh, validate_mesh
from .gluing import classify_interface, compute_gluing
from .verify import (c1_identity_check, condition_number, dimension_oracle, gradient_jump,
                     sample_csv, sample_surface)

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3
GRADIENT_TOL = 1e-10


@dataclass
class RunConfig:
    command: str
    degree: int = 4
    scaling: str = "factorial"
    mu_orthogonalize: bool = True
    output_format: str = "json"
    add_float: bool = False


def _floatify(obj):
    """Mirror of a JSON tree with rational strings turned into floats."""
    if isinstance(obj, dict):
        return {k: _floatify(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_floatify(v) for v in obj]
    if isinstance(obj, str):
        try:
            return float(Fraction(obj))
        except (ValueError, ZeroDivisionError):
            return obj
    return obj


def _prepare(mesh, d):
    g = compute_gluing(mesh)
    cls = classify_interface(mesh)
    tns = algorithm1(g, cls, d)
    return g, cls, tns


def cmd_analyze(mesh, cfg: RunConfig) -> tuple[int, str]:
    g, cls, tns = _prepare(mesh, cfg.degree)
    dims = dimension(g, tns, cfg.degree)
    out = {
        "degree": cfg.degree,
        "interface": cls.to_json(),
        "branch": tns.case_record,
        "gluing": g.to_json(),
        "space": tns.to_json(),
        "dimensions": dims.to_json(),
    }
    if cfg.add_float:
        out["gluing_float"] = _floatify(out["gluing"])
    return EXIT_OK, json.dumps(out, indent=2)


def _basis(mesh, cfg):
    g, _, tns = _prepare(mesh, cfg.degree)
    return g, build_basis(g, tns, mesh, cfg.scaling, cfg.mu_orthogonalize)


def cmd_basis(mesh, cfg: RunConfig, function: int = 0, n: int = 10) -> tuple[int, str]:
    _, b = _basis(mesh, cfg)
    if cfg.output_format == "csv-sample":
        return EXIT_OK, sample_csv(sample_surface(_pick(b, function), mesh, n))
    funcs = [f.to_json() for f in b.functions]
    if cfg.add_float:
        for f in funcs:
            f["net1_float"] = _floatify(f["net1"])
            f["net2_float"] = _floatify(f["net2"])
    out = {"degree": cfg.degree, "scaling": cfg.scaling,
           "functionals": [lam.label for lam in b.functionals.functionals],
           "count": len(b), "functions": funcs}
    return EXIT_OK, json.dumps(out, indent=2)


def _pick(b, function):
    if not 0 <= function < len(b):
        raise IndexError(f"function index {function} out of range 0..{len(b) - 1}")
    return b.functions[function]


def cmd_sample(mesh, cfg: RunConfig, function: int = 0, n: int = 10) -> tuple[int, str]:
    _, b = _basis(mesh, cfg)
    return EXIT_OK, sample_csv(sample_surface(_pick(b, function), mesh, n))


def cmd_verify(mesh, cfg: RunConfig, oracle=False, identity=False, gradient_samples=0,
               cond=False) -> tuple[int, str]:
    if not (oracle or identity or gradient_samples or cond):
        identity = True
    g, _, tns = _prepare(mesh, cfg.degree)
    dims = dimension(g, tns, cfg.degree)
    b = build_basis(g, tns, mesh, cfg.scaling, cfg.mu_orthogonalize)
    report: dict = {"degree": cfg.degree, "branch": tns.case_record, "dimension": dims.total,
                    "basis_size": len(b)}
    ok = len(b) == dims.total
    if identity:
        fails = [f.tag for f in b.functions if not c1_identity_check(f, g).passed]
        report["identity"] = {"checked": len(b), "failed": fails}
        ok &= not fails
    if oracle:
        o = dimension_oracle(mesh, cfg.degree)
        report["oracle"] = o.to_json() | {"agrees": o.nullspace_dim == dims.total}
        ok &= o.nullspace_dim == dims.total
    if gradient_samples:
        jump = max(gradient_jump(f, mesh, gradient_samples) for f in b.interface_functions)
        report["gradient_jump"] = {"samples": gradient_samples, "max": jump, "tolerance": GRADIENT_TOL}
        ok &= jump <= GRADIENT_TOL
    if cond:
        report["condition_number"] = condition_number(b)
    report["pass"] = bool(ok)
    return (EXIT_OK if ok else EXIT_VERIFY), json.dumps(report, indent=2)


def _add_common(p: argparse.ArgumentParser, command: str):
    p.add_argument("--degree", "-d", type=int, default=4, help="polynomial degree of the functions (>= 2)")
    if command in ("basis", "verify", "sample"):
        p.add_argument("--functional-scaling", choices=SCALINGS, default="factorial")
        p.add_argument("--no-mu-orthogonalize", action="store_true")
    if command in ("analyze", "basis"):
        p.add_argument("--float", action="store_true", help="add decimal mirrors of rational output")
    if command == "basis":
        p.add_argument("--format", choices=("json", "csv-sample"), default="json")
    if command in ("basis", "sample"):
        p.add_argument("--function", type=int, default=0, help="basis function index for sampling")
        p.add_argument("--n", type=int, default=10, help="grid intervals per direction")
    if command == "verify":
        p.add_argument("--oracle", action="store_true")
        p.add_argument("--identity", action="store_true")
        p.add_argument("--gradient-samples", type=int, default=0, metavar="N")
        p.add_argument("--cond", action="store_true")


COMMANDS = ("analyze", "basis", "verify", "sample")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedc1", description="C1 isogeometric spaces on a "
                                     "quadratic triangle glued to a biquadratic quadrilateral")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("mesh", help="mesh JSON file")
        _add_common(p, name)
    ex = sub.add_parser("example", help="run a command on a bundled configuration")
    ex.add_argument("name", choices=sorted(BUNDLED))
    exsub = ex.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS + ("mesh",):
        p = exsub.add_parser(name)
        if name != "mesh":
            _add_common(p, name)
    return parser


def run(args: argparse.Namespace) -> tuple[int, str]:
    command = args.command if args.command != "example" else args.subcommand
    if args.command == "example":
        mesh = bundled_mesh(args.name)
        if command == "mesh":
            return EXIT_OK, json.dumps(mesh.to_json(), indent=2)
    else:
        mesh = load_mesh(args.mesh)
    validate_mesh(mesh)
    if args.degree < 2:
        raise ValueError("degree must be at least 2")
    cfg = RunConfig(command, args.degree, getattr(args, "functional_scaling", "factorial"),
                    not getattr(args, "no_mu_orthogonalize", False),
                    getattr(args, "format", "json"), getattr(args, "float", False))
    if command == "analyze":
        return cmd_analyze(mesh, cfg)
    if command == "basis":
        return cmd_basis(mesh, cfg, args.function, args.n)
    if command == "sample":
        return cmd_sample(mesh, cfg, args.function, args.n)
    return cmd_verify(mesh, cfg, args.oracle, args.identity, args.gradient_samples, args.cond)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = run(args)
    except (OSError, MeshFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MeshError as exc:
        print(f"invalid mesh: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
