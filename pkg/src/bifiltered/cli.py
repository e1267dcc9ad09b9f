"""Command line interface.

Every subcommand prints one JSON report on stdout.  Exit status: 0 when the
property holds or the computation finished, 1 when the property fails (the report
carries a witness), 2 for usage and input errors.  Randomized commands take
--seed; its default comes from the BIFILTERED_SEED environment variable (else 0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog, generators
from .derived import (RingMap, RingMismatch, adjunction_check, ext, gr_commutation_check, rhom, tor,
                      zero_piece)
from .document import Document, DocumentError, parse, serialize
from .exactlin import GF, QQ
from .exactlin.matrix import DimensionMismatch
from .filtcomplex import (BiregularityError, ChainMap, FilteredComplex, cone, exactness_profile,
                          gr_cohomology_dims, gr_levels, gr_qis_criterion, is_filtered_qis,
                          is_null_homotopic, is_strictly_exact)
from .filtmod import FilteredModule, FilteredMorphism, FiltrationError, gr, is_strict, is_strict_per_filtration
from .resolve import TruncationError, special_flat_resolution, special_injective_resolution
from .resolve import test_strict_flat as search_flat
from .resolve import test_strict_injective as search_injective

SEED_ENV = "BIFILTERED_SEED"


class UsageError(ValueError):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


# ------------------------------------------------------------------ report helpers

def _indices(idx):
    return [list(p) for p in idx]


def _table_rows(table):
    rows = []
    for key, dim in table.items():
        kind = key[0]
        if kind == "H":
            rows.append({"kind": "H", "degree": key[1], "dim": dim})
        elif kind == "piece":
            rows.append({"kind": "piece", "degree": key[1], "indices": _indices(key[2]), "dim": dim})
        elif kind == "gr":
            rows.append({"kind": "gr", "degree": key[1], "levels": [key[2], key[3]], "dim": dim})
        else:
            rows.append({"kind": str(kind), "key": repr(key[1:]), "dim": dim})
    return rows


def _report_rows(report):
    return [{"key": repr(k), "left": a, "right": b} for k, a, b in report.rows]


def _clean(obj):
    """Make certificate dictionaries JSON friendly (integer keys become strings)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


# ------------------------------------------------------------------ subcommands

def cmd_check(args, doc: Document):
    prop = args.property
    if prop == "strict":
        obj = doc.get(args.map, (FilteredMorphism, ChainMap))
        morphisms = [(None, obj)] if isinstance(obj, FilteredMorphism) else \
            [(q, FilteredMorphism(obj.source.term(q), obj.target.term(q), obj.component(q), check=False))
             for q in obj.degrees()]
        for q, m in morphisms:
            ok, wit = is_strict(m)
            if not ok:
                report = {"holds": False, "witness": {
                    "indices": _indices(wit.indices),
                    "image_of_piece_dim": wit.image_of_piece.dim,
                    "image_meet_piece_dim": wit.image_meet_piece.dim},
                    "per_filtration": {str(i): is_strict_per_filtration(m, i) for i in range(1, m.source.n + 1)}}
                if q is not None:
                    report["witness"]["degree"] = q
                return 1, report
        return 0, {"holds": True}
    if prop == "exact":
        c = doc.complex(args.complex)
        ok, wit = is_strictly_exact(c)
        report = {"holds": ok, "profile": exactness_profile(c)}
        if not ok:
            report["witness"] = {"degree": wit.degree, "indices": _indices(wit.indices)}
        return (0 if ok else 1), report
    if prop == "fqis":
        f = doc.chain_map(args.map)
        ok, wit = is_filtered_qis(f)
        report = {"holds": ok, "cone_profile": exactness_profile(cone(f))}
        try:
            report["gr_criterion"] = gr_qis_criterion(f)
        except BiregularityError as exc:
            report["gr_criterion"] = None
            report["gr_criterion_skipped"] = str(exc)
        if not ok:
            report["witness"] = {"cone_degree": wit.degree, "indices": _indices(wit.indices)}
        return (0 if ok else 1), report
    if prop == "homotopy":
        f = doc.chain_map(args.map)
        if args.other:
            g = doc.chain_map(args.other)
            f = f - ChainMap(f.source, f.target, g.components)
        h = is_null_homotopic(f)
        ok = h is not None
        report = {"holds": ok}
        if ok:
            report["homotopy_degrees"] = sorted(h.components)
        return (0 if ok else 1), report
    raise UsageError(f"unknown property {prop!r}")


def cmd_gr(args, doc: Document):
    obj = doc.get(args.object, (FilteredModule, FilteredComplex))
    rows = []
    if isinstance(obj, FilteredModule):
        if obj.n == 1:
            levels = [(k, None) for k in range(obj.chain(1).lo - 1, obj.chain(1).hi + 2)]
        else:
            levels = [(a, b) for a in range(obj.chain(1).lo - 1, obj.chain(1).hi + 2)
                      for b in range(obj.chain(2).lo - 1, obj.chain(2).hi + 2)]
        for k1, k2 in levels:
            d = gr(obj, k1, k2).dim
            if d:
                rows.append({"levels": [k1, k2], "dim": d})
        return 0, {"kind": "module", "total": sum(r["dim"] for r in rows), "gr": rows}
    for k1, k2 in gr_levels(obj):
        dims = {q: d for q, d in gr_cohomology_dims(obj, k1, k2).items() if d}
        if dims:
            rows.append({"levels": [k1, k2], "cohomology": {str(q): d for q, d in sorted(dims.items())}})
    return 0, {"kind": "complex", "gr_cohomology": rows}


def _write_doc(args, doc: Document, report):
    if args.out:
        serialize(doc, args.out)
        report["written"] = str(args.out)
    else:
        report["document"] = doc.to_json()


def cmd_cone(args, doc: Document):
    f = doc.chain_map(args.map)
    c = cone(f)
    report = {"deg_lo": c.deg_lo, "dims": c.dims()}
    _write_doc(args, Document(c.field, {args.name: c}), report)
    return 0, report


def cmd_resolve(args, doc: Document):
    c = doc.complex(args.complex)
    if args.kind == "inj":
        res = special_injective_resolution(c, max_len=args.max_len, hull=args.mode or "minimal")
    else:
        res = special_flat_resolution(c, max_len=args.max_len, cover=args.mode or "minimal")
    certs = res.certificates or res.certify()
    report = {"kind": res.kind, "mode": res.mode, "truncated": res.truncated,
              "deg_lo": res.complex.deg_lo, "dims": res.complex.dims(),
              "certificates": _clean(certs), "certified": res.certified()}
    _write_doc(args, Document(c.field, {"resolution": res.complex, "augmentation": res.augmentation}), report)
    return (0 if report["certified"] else 1), report


def cmd_test(args, doc: Document):
    m = doc.get(args.module, (FilteredModule,))
    search = search_injective if args.kind == "stinj" else search_flat
    result = search(m, trials=args.trials, seed=args.seed, max_dim=args.max_dim)
    report = {"seed": args.seed, "trials": args.trials, "counterexample": result.found}
    if result.found:
        report["trial"] = result.trial
        report["reason"] = result.reason
        report["document"] = Document(m.field, {"source": result.source, "target": result.target,
                                                "inclusion": FilteredMorphism(result.source, result.target,
                                                                              result.inclusion, check=False)}).to_json()
        return 1, report
    report["shape_licensed"] = result.proven
    return 0, report


def _pair(args, doc):
    e, f = doc.complex(args.e), doc.complex(args.f)
    if e.field != f.field:
        raise RingMismatch(f"{args.e} is over {e.field} and {args.f} over {f.field}")
    return e, f


def cmd_ext(args, doc: Document):
    e, f = _pair(args, doc)
    return 0, {"q": args.q, "dim": ext(e, f, args.q, hull=args.mode or "minimal"),
               "piece": _indices(zero_piece(e.n))}


def cmd_tor(args, doc: Document):
    e, f = _pair(args, doc)
    return 0, {"q": args.q, "dim": tor(e, f, args.q, cover=args.mode or "minimal"),
               "piece": _indices(zero_piece(e.n))}


def cmd_rhom(args, doc: Document):
    e, f = _pair(args, doc)
    r = rhom(e, f, hull=args.mode or "minimal")
    return 0, {"deg_lo": r.complex.deg_lo, "dims": r.complex.dims(), "truncated": r.truncated,
               "trusted_degrees": r.trusted_degrees(), "table": _table_rows(r.table(gr_table=not args.no_gr))}


def cmd_adjunction(args, doc: Document):
    rm = doc.get(args.ringmap, (RingMap,))
    e, f = doc.complex(args.e), doc.complex(args.f)
    rep = adjunction_check(rm, e, f)
    report = {"holds": rep.holds, "degrees": rep.trusted_degrees, "rows": len(rep.rows)}
    if not rep.holds:
        report["mismatches"] = [{"key": repr(k), "left": a, "right": b} for k, a, b in rep.mismatches()]
    return (0 if rep.holds else 1), report


def cmd_grcommute(args, doc: Document):
    rm = doc.get(args.ringmap, (RingMap,))
    rep = gr_commutation_check(rm, doc.complex(args.complex))
    report = {"name": rep.name, "holds": rep.holds, "rows": _report_rows(rep)}
    return (0 if rep.holds else 1), report


def fixture_documents(seed: int) -> dict:
    """The documents written by the `fixtures` subcommand, by file name."""
    e, f, s = catalog.summation_map(QQ)
    summation = Document(QQ, {"E": e, "F": f, "f": s, "id_E": FilteredMorphism.identity(e)})
    se, sf = catalog.shift_pair(GF(2))
    shift = Document(GF(2), {"E": se.terms[0], "F": sf.terms[0]})
    trivial = Document(QQ, {f"T{d}": FilteredModule.trivial(QQ, d) for d in range(4)})
    trivial.objects["line"] = catalog.doubly_finite_line(QQ)
    rng = generators.rng_from(seed)
    objects = {}
    for name, field in (("gf2", GF(2)), ("qq", QQ)):
        for j in range(3):
            objects[f"{name}_{j}"] = generators.random_complex(field, rng, max_dim=2, biregular=True)
    rand = Document(QQ, objects, meta={"seed": seed, "generator": "random_complex(max_dim=2, biregular=True)"})
    return {"summation.json": summation, "shift.json": shift, "trivial.json": trivial, "random.json": rand}


def cmd_fixtures(args, doc):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, d in fixture_documents(args.seed).items():
        serialize(d, out / name)
        written.append(str(out / name))
    return 0, {"written": written, "seed": args.seed}


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bifiltered", description="Exact computations with bifiltered complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def doc_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("document", help="input JSON document")
        return sp

    sp = sub.add_parser("check", help="check strictness, strict exactness, filtered qis or null-homotopy")
    sp.add_argument("property", choices=["strict", "exact", "fqis", "homotopy"])
    sp.add_argument("document")
    sp.add_argument("--map", help="morphism or chain map")
    sp.add_argument("--other", help="second chain map for `homotopy` (tests map - other)")
    sp.add_argument("--complex", help="complex (or module) for `exact`")

    sp = doc_cmd("gr", "graded pieces of a module or gr cohomology of a complex")
    sp.add_argument("--object", required=True)

    sp = doc_cmd("cone", "mapping cone of a chain map")
    sp.add_argument("--map", required=True)
    sp.add_argument("--name", default="cone")
    sp.add_argument("--out")

    sp = sub.add_parser("resolve", help="special injective or flat resolution")
    sp.add_argument("kind", choices=["inj", "flat"])
    sp.add_argument("document")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--mode", choices=["minimal", "jumps", "window"])
    sp.add_argument("--max-len", type=int)
    sp.add_argument("--out")

    sp = sub.add_parser("test", help="falsifier search for strict injectivity or strict flatness")
    sp.add_argument("kind", choices=["stinj", "stflat"])
    sp.add_argument("document")
    sp.add_argument("--module", required=True)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--max-dim", type=int, default=3)
    sp.add_argument("--seed", type=int)

    for name, help_text in (("ext", "filtered Ext dimension"), ("tor", "filtered Tor dimension")):
        sp = doc_cmd(name, help_text)
        sp.add_argument("--e", required=True)
        sp.add_argument("--f", required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--mode", choices=["minimal", "jumps", "window"])

    sp = doc_cmd("rhom", "cohomology table of RHom")
    sp.add_argument("--e", required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--mode", choices=["minimal", "jumps", "window"])
    sp.add_argument("--no-gr", action="store_true", help="omit graded entries from the table")

    sp = doc_cmd("adjunction", "base change adjunction tables along a ring map")
    sp.add_argument("--ringmap", required=True)
    sp.add_argument("--e", required=True, help="complex over the source ring")
    sp.add_argument("--f", required=True, help="complex over the target ring")

    sp = doc_cmd("grcommute", "gr against base change along a ring map")
    sp.add_argument("--ringmap", required=True)
    sp.add_argument("--complex", required=True)

    sp = sub.add_parser("fixtures", help="write the built-in example documents")
    sp.add_argument("--out", default="fixtures")
    sp.add_argument("--seed", type=int)
    return p


_COMMANDS = {"check": cmd_check, "gr": cmd_gr, "cone": cmd_cone, "resolve": cmd_resolve, "test": cmd_test,
             "ext": cmd_ext, "tor": cmd_tor, "rhom": cmd_rhom, "adjunction": cmd_adjunction,
             "grcommute": cmd_grcommute, "fixtures": cmd_fixtures}

_REQUIRED = {("check", "strict"): "map", ("check", "fqis"): "map", ("check", "homotopy"): "map",
             ("check", "exact"): "complex"}


def run(argv=None, out=None, err=None) -> int:
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = default_seed()
        need = _REQUIRED.get((args.command, getattr(args, "property", None)))
        if need and not getattr(args, need):
            raise UsageError(f"`{args.command} {args.property}` needs --{need}")
        doc = parse(args.document) if hasattr(args, "document") else None
        code, report = _COMMANDS[args.command](args, doc)
    except DocumentError as exc:
        json.dump({"error": exc.message, "pointer": exc.pointer}, err, sort_keys=True)
        err.write("\n")
        return 2
    except (UsageError, RingMismatch, FiltrationError, DimensionMismatch, TruncationError, OSError) as exc:
        json.dump({"error": f"{type(exc).__name__}: {exc}"}, err, sort_keys=True)
        err.write("\n")
        return 2
    report = {"command": " ".join(x for x in (args.command, getattr(args, "property", None),
                                              getattr(args, "kind", None)) if x), **report}
    json.dump(report, out, indent=2, sort_keys=True)
    out.write("\n")
    return code


def main(argv=None):
    sys.exit(run(argv))
