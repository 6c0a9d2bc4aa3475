"""Command-line front end.

    icelab catalog   ALG [--dim-bound N]
    icelab torf      ALG [--dot FILE]
    icelab enumerate ALG --kind K --m M
    icelab verify    ALG --m M
    icelab jperp     ALG --module 10,11

Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from .algebra import Algebra, load_algebra
from .catalog import Catalog, build_catalog, dump_catalog, load_catalog
from .errors import CapExceeded, IcelabError, PreconditionError, VerificationError
from .lattice import TorfLattice, enumerate_torf
from .module import DEFAULT_CAP, injective, projective
from .sequences import KINDS, Report, enumerate_kind, report_header, verify_bijections

log = logging.getLogger("icelab")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    algebra: Path
    field: int | None = None
    dim_bound: int | None = None
    mult_bound: int = 1
    cap: int = DEFAULT_CAP
    cache_dir: Path | None = None
    threads: int = 1
    output: Path | None = None

    def __post_init__(self):
        for name in ("dim_bound", "mult_bound", "cap", "threads"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise PreconditionError(f"--{name.replace('_', '-')} must be positive")


def default_dim_bound(alg: Algebra) -> int:
    """Largest indecomposable projective or injective; a guess the certificate checks."""
    return max(max(projective(alg, v).dim, injective(alg, v).dim) for v in range(alg.n))


def get_catalog(cfg: RunConfig, alg: Algebra) -> Catalog:
    bound = cfg.dim_bound or default_dim_bound(alg)
    path = None
    if cfg.cache_dir is not None:
        path = cfg.cache_dir / f"{alg.digest()[:16]}-d{bound}.catalog"
        if path.exists():
            log.info("catalog cache hit %s", path)
            return load_catalog(path.read_text(encoding="utf-8"), alg)
    cat = build_catalog(alg, bound, cfg.cap, cfg.threads)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dump_catalog(cat), encoding="utf-8")
    return cat


def _table(cat: Catalog, name: str, table) -> list[str]:
    w = max(len(x) for x in cat.labels)
    out = [f"{name}"]
    out.append(" " * (w + 1) + " ".join(x.rjust(w) for x in cat.labels))
    for i, x in enumerate(cat.labels):
        out.append(x.rjust(w) + " " + " ".join(str(int(v)).rjust(w) for v in table[i]))
    return out


def cmd_catalog(cfg: RunConfig, cat: Catalog, args, out: TextIO) -> int:
    opt = lambda i: "0" if i is None else cat.labels[i]  # noqa: E731
    print(f"# algebra {cat.alg.digest()[:16]} p={cat.p} dim_bound={cat.dim_bound}", file=out)
    print(f"entries {len(cat)}", file=out)
    for i, x in enumerate(cat.labels):
        flags = "".join(f for f, b in (("P", cat.is_projective[i]), ("I", cat.is_injective[i])) if b) or "-"
        print(f"  {x} dims={cat.dims(i)} {flags} tau={opt(cat.tau[i])} tau_inv={opt(cat.tau_inverse[i])}", file=out)
    for line in _table(cat, "hom", cat.dim_hom) + _table(cat, "ext1", cat.dim_ext1):
        print(line, file=out)
    return EXIT_OK


def cmd_torf(cfg: RunConfig, cat: Catalog, args, out: TextIO) -> int:
    lat = enumerate_torf(cat, oracle=args.oracle, cap=cfg.cap, threads=cfg.threads)
    print(f"torf {len(lat)} covers {lat.edge_count}", file=out)
    for f in lat:
        print(f"  {cat.label_of(f)}", file=out)
    if args.dot:
        Path(args.dot).write_text(lat.export_dot(), encoding="utf-8")
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig, cat: Catalog, args, out: TextIO) -> int:
    lat = enumerate_torf(cat, threads=cfg.threads)
    items = enumerate_kind(cat, lat, args.kind, args.m, cfg.mult_bound, cfg.cap)
    print(f"# kind={args.kind} m={args.m}" + (f" bounded mult={cfg.mult_bound}" if args.kind == "ice_seqs" else ""), file=out)
    for x in items:
        print(x.render(cat), file=out)
    print(f"count {len(items)}", file=out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, cat: Catalog, args, out: TextIO) -> int:
    from .checks import property_suite

    lat = enumerate_torf(cat, threads=cfg.threads)
    report = Report(report_header(cat, cfg.mult_bound), [])
    for m in range(args.m + 1):
        report.extend(verify_bijections(cat, lat, m, cfg.mult_bound, cfg.cap, ice_census=not args.skip_census))
    if not args.skip_properties:
        report.checks.extend(property_suite(cat, lat, min(args.m, 3), cfg.cap, definitional=not args.skip_definitional))
    out.write(report.render())
    return EXIT_OK if report.ok else EXIT_VERIFY


def _parse_members(cat: Catalog, text: str) -> frozenset[int]:
    out = set()
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok in cat.labels:
            out.add(cat.labels.index(tok))
        elif tok.startswith("#") and tok[1:].isdigit() and int(tok[1:]) < len(cat):
            out.add(int(tok[1:]))
        else:
            raise PreconditionError(f"unknown catalog member {tok!r} (use a label or #index)")
    return frozenset(out)


def cmd_jperp(cfg: RunConfig, cat: Catalog, args, out: TextIO) -> int:
    from .tilting import jperp

    x = _parse_members(cat, args.module)
    print(f"jperp {cat.label_of(x)} = {cat.label_of(jperp(cat, x))}", file=out)
    return EXIT_OK


COMMANDS = {"catalog": cmd_catalog, "torf": cmd_torf, "enumerate": cmd_enumerate, "verify": cmd_verify, "jperp": cmd_jperp}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", type=Path, help="algebra description file")
    common.add_argument("--field", type=int, help="override the field characteristic")
    common.add_argument("--dim-bound", type=int, help="largest total dimension to enumerate")
    common.add_argument("--mult-bound", type=int, default=1, help="target multiplicity bound for ICE and W_L tests")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest exhaustive enumeration allowed")
    common.add_argument("--cache-dir", type=Path, default=os.environ.get("ICELAB_CACHE_DIR") or None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="icelab", description="Exact τ-tilting and ICE-sequence computations over F_p.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", parents=[common], help="build, cache and print the indecomposable catalog")
    t = sub.add_parser("torf", parents=[common], help="torsion-free classes and their Hasse diagram")
    t.add_argument("--dot", help="write the Hasse diagram as Graphviz DOT")
    t.add_argument("--oracle", action="store_true", help="cross-check against the subset fixpoint oracle")
    e = sub.add_parser("enumerate", parents=[common], help="enumerate sequences of one kind")
    e.add_argument("--kind", required=True, choices=KINDS)
    e.add_argument("--m", type=int, required=True)
    v = sub.add_parser("verify", parents=[common], help="check the bijections for m = 0..M and the property suites")
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--skip-properties", action="store_true")
    v.add_argument("--skip-census", action="store_true", help="do not enumerate ICE-sequences independently")
    v.add_argument("--skip-definitional", action="store_true", help="skip the mono-splitting cross-check")
    j = sub.add_parser("jperp", parents=[common], help="the τ⁻¹-perpendicular category of a rigid module")
    j.add_argument("--module", required=True, help="comma-separated labels (or #index)")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(
            algebra=args.algebra,
            field=args.field,
            dim_bound=args.dim_bound,
            mult_bound=args.mult_bound,
            cap=args.cap,
            cache_dir=Path(args.cache_dir) if args.cache_dir else None,
            threads=args.threads,
            output=args.output,
        )
        if getattr(args, "m", 0) < 0:
            raise PreconditionError("--m must be non-negative")
        alg = load_algebra(cfg.algebra, cfg.field)
        cat = get_catalog(cfg, alg)
        if cfg.output is not None:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                return COMMANDS[args.command](cfg, cat, args, fh)
        return COMMANDS[args.command](cfg, cat, args, sys.stdout)
    except CapExceeded as e:
        print(f"icelab: cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as e:
        print(f"icelab: verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (IcelabError, OSError, ValueError) as e:
        print(f"icelab: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
