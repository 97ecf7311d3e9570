"""Command-line front end.

Exit codes: 0 verified, 1 verification failed, 2 usage, parse or precondition error.
JSON output carries ``"schema": 1``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from lftrees.bttree import (
    LatticeVertex,
    bt_displacement,
    bt_distance,
    bt_find_fixed_vertex,
    bt_min_displacement,
    bt_neighbors,
)
from lftrees.cosettree import (
    FiniteGroup,
    base_vertex,
    ct_classify,
    ct_stabiliser_enum,
    ct_valence,
    parse_element,
    TREE_COUNT,
)
from lftrees.errors import CertificationError, LFTreesError, NotFound, ParseError
from lftrees.funcfield import check_prime, parse_ratfunc
from lftrees.repcheck import SCHEMA, json_val, loxodromify, surface_rep_certificate, verify_matfrm_identities
from lftrees.sl2 import FamilyParams, Mat2, builtin_family, classify
from lftrees.surfaceword import SurfaceRep, amalgam_normal_form, evaluate, parse_word
from lftrees.valuation import Place

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    p: int = 5
    place: str = "inf"
    format: str = "human"
    seed: int = 0
    radius: int = 4
    n_max: int = 64
    shift_bound: int = 5
    out: str | None = None

    def __post_init__(self):
        check_prime(self.p)
        for name in ("radius", "n_max", "shift_bound"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        def bound(name: str, env: str, default: int) -> int:
            value = getattr(args, name, None)
            if value is not None:
                return value
            return int(os.environ.get(env, default))

        return cls(
            p=getattr(args, "p", 5),
            place=getattr(args, "place", "inf"),
            format=args.format,
            seed=args.seed,
            radius=bound("radius", "LFTREES_RADIUS", 4),
            n_max=bound("n_max", "LFTREES_N_MAX", 64),
            shift_bound=bound("shift_bound", "LFTREES_SHIFT_BOUND", 5),
            out=args.out,
        )


class Report:
    def __init__(self, cfg: RunConfig, command: str):
        self.cfg = cfg
        self.data: dict = {"schema": SCHEMA, "command": command}
        self.lines: list[str] = []

    def add(self, line: str = ""):
        self.lines.append(line)

    def emit(self, ok: bool) -> int:
        self.data["pass"] = ok
        if self.cfg.format == "json":
            text = json.dumps(self.data, indent=2, sort_keys=True)
        else:
            text = "\n".join(self.lines + ["PASS" if ok else "FAIL"])
        print(text)
        if self.cfg.out:
            with open(self.cfg.out, "w") as fh:
                fh.write(text + "\n")
        return EXIT_OK if ok else EXIT_FAIL


def parse_matrix(text: str, p: int, default_place: str) -> tuple[Mat2, str]:
    """``[[e11,e12],[e21,e22]]`` with an optional ``@place`` suffix."""
    body, _, place = text.partition("@")
    s = "".join(body.split())
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ParseError("matrix must look like [[e11,e12],[e21,e22]]", 0, text)
    rows = s[2:-2].split("],[")
    if len(rows) != 2 or any(len(r.split(",")) != 2 for r in rows):
        raise ParseError("matrix must have two rows of two entries", 0, text)
    entries = [parse_ratfunc(e, p) for r in rows for e in r.split(",")]
    return Mat2(*entries), (place.strip() or default_place)


# -- commands --------------------------------------------------------------------


def cmd_verify_matfrm(args, cfg: RunConfig) -> int:
    params = FamilyParams.parse(args.params, cfg.p) if args.params else builtin_family(cfg.p)
    result = verify_matfrm_identities(params)
    rep = Report(cfg, "verify-matfrm")
    rep.data.update(result)
    rep.add(f"p = {cfg.p}; {params}")
    rep.add(f"X = {result.get('X')}; Y = {result.get('Y')}")
    for name, ok in result["identities"].items():
        rep.add(f"  {'ok  ' if ok else 'FAIL'} {name}")
    if "error" in result:
        rep.add(f"error: {result['error']}")
    return rep.emit(result["pass"])


def cmd_certify_surface(args, cfg: RunConfig) -> int:
    place = Place.parse(cfg.place, cfg.p)
    rep = Report(cfg, "certify-surface")
    try:
        cert = surface_rep_certificate(cfg.p, place)
    except CertificationError as exc:
        rep.data.update({"stage": exc.stage, "error": str(exc.cause)})
        rep.add(f"certificate failed at stage {exc.stage}: {exc.cause}")
        return rep.emit(False)
    rep.data.update(cert.to_json())
    rep.add(f"p = {cfg.p}, place {place}")
    rep.add(f"common trace valuation s = {cert.free.s}; translation lengths {cert.free.lengths}")
    rep.add(f"commutator = diag({cert.commutator_diag[0]}, {cert.commutator_diag[1]})")
    rep.add("X^2 != Y^2; surface relation [A,B] = [D,C] holds exactly")
    return rep.emit(True)


def cmd_word(args, cfg: RunConfig) -> int:
    rep = Report(cfg, "word")
    if args.nf is not None:
        nf = amalgam_normal_form(parse_word(args.nf))
        rep.data.update({"kind": nf.kind, "syllables": [[f, w] for f, w in nf.syllables], "text": str(nf)})
        rep.add(f"{nf.kind}: {nf}")
        return rep.emit(True)
    surface = SurfaceRep.builtin(cfg.p)
    if args.eval is not None:
        w = parse_word(args.eval)
        M = evaluate(w, surface)
        rep.data.update({"word": w, "matrix": [str(e) for e in M.entries], "identity": M.is_identity()})
        rep.add(f"rho({w or '1'}) =")
        rep.add(f"  [[{M.m11}, {M.m12}],")
        rep.add(f"   [{M.m21}, {M.m22}]]")
        return rep.emit(True)
    words = [parse_word(w) for w in args.loxodromify.split(",")]
    place = Place.parse(cfg.place, cfg.p)
    try:
        res = loxodromify(words, surface, place, cfg.n_max)
    except NotFound as exc:
        rep.data["error"] = str(exc)
        rep.add(str(exc))
        return rep.emit(False)
    rep.data.update(res.to_json())
    rep.add(f"n = {res.n} (v(y) = -{res.n} at {place}; first passing n = {res.first_success})")
    for w, v in res.valuations.items():
        rep.add(f"  v(tr {w}) = {v}")
    return rep.emit(True)


def _vertex(text: str, cfg: RunConfig) -> LatticeVertex:
    if text.strip().split("@")[0] == "base":
        place = text.partition("@")[2].strip() or cfg.place
        return LatticeVertex.base(cfg.p, Place.parse(place, cfg.p))
    M, place = parse_matrix(text, cfg.p, cfg.place)
    return LatticeVertex(M, Place.parse(place, cfg.p))


def cmd_bt(args, cfg: RunConfig) -> int:
    rep = Report(cfg, "bt")
    place = Place.parse(cfg.place, cfg.p)
    if args.dist:
        u, v = (_vertex(t, cfg) for t in args.dist)
        d = bt_distance(u, v)
        rep.data["distance"] = d
        rep.add(f"distance = {d}")
        return rep.emit(True)
    if args.neighbors:
        v = _vertex(args.neighbors, cfg)
        nbs = bt_neighbors(v)
        rep.data["neighbors"] = [str(n) for n in nbs]
        rep.add(f"{len(nbs)} neighbors of {v}:")
        for n in nbs:
            rep.add(f"  {n}")
        return rep.emit(True)
    text = args.classify or args.fixed
    g, pl = parse_matrix(text, cfg.p, cfg.place)
    place = Place.parse(pl, cfg.p)
    c = classify(g, place)
    rep.data.update({"kind": c.kind, "length": c.length, "trace_valuation": json_val(c.trace_valuation)})
    rep.add(f"{c.kind}, translation length {c.length} (v(tr) = {json_val(c.trace_valuation)})")
    if args.classify:
        if place.degree == 1:
            md = bt_min_displacement(g, cfg.radius, place)
            rep.data["min_displacement"] = {"radius": cfg.radius, "value": md}
            rep.add(f"min displacement over radius {cfg.radius}: {md}")
        return rep.emit(True)
    v = bt_find_fixed_vertex(g, place)
    d0 = bt_distance(LatticeVertex.base(cfg.p, place), v)
    rep.data.update({"fixed_vertex": str(v), "displacement": bt_displacement(g, v), "distance_from_base": d0})
    rep.add(f"fixed vertex {v} at distance {d0} from the base vertex")
    return rep.emit(True)


def _stabiliser_vertices(spec: str, family: str) -> list:
    s = spec.strip()
    if s in ("default-vertices", "base", "base4", "default"):
        return [base_vertex(family, t) for t in range(1, TREE_COUNT[family] + 1)]
    if "=" in s:  # "i=2 j=-1": one level per tree, in tree order
        levels = [int(part.split("=")[1]) for part in s.replace(",", " ").split()]
        if len(levels) != TREE_COUNT[family]:
            raise ParseError(f"need {TREE_COUNT[family]} levels for family {family}", 0, spec)
        return [base_vertex(family, t, lv) for t, lv in enumerate(levels, start=1)]
    out = []
    for part in s.split(","):  # "tree:level"
        tree, _, level = part.partition(":")
        out.append(base_vertex(family, int(tree), int(level or 0)))
    return out


def _window(text: str | None, family: str, default: int):
    if text is None:
        w = (-default, default)
        return (w, w) if family == "lamp2" else w
    lo, hi = (int(v) for v in text.split(":"))
    return ((lo, hi), (lo, hi)) if family == "lamp2" else (lo, hi)


def cmd_coset(args, cfg: RunConfig) -> int:
    rep = Report(cfg, "coset")
    family = args.family
    F = FiniteGroup.parse(args.group)
    rep.data.update({"family": family, "group": F.name})
    if args.stabiliser is not None:
        vertices = _stabiliser_vertices(args.stabiliser, family)
        window = _window(args.window, family, 5 if family != "lamp2" else 3)
        found = ct_stabiliser_enum(vertices, window, cfg.shift_bound, F)
        rep.data.update({
            "vertices": [str(v) for v in vertices],
            "window": window,
            "shift_bound": cfg.shift_bound,
            "order": len(found),
            "elements": [str(g) for g in found],
        })
        rep.add(f"stabiliser of {', '.join(map(str, vertices))}: {len(found)} elements")
        for g in found:
            rep.add(f"  {g}")
        return rep.emit(True)
    g = parse_element(args.classify, family, F)
    trees = [args.tree] if args.tree else list(range(1, TREE_COUNT[family] + 1))
    results = []
    for t in trees:
        c = ct_classify(g, t)
        entry = {"tree": t, "kind": c.kind, "length": c.length}
        line = f"tree {t}: {c.kind}"
        if c.witness is not None:
            entry["fixed_vertex"] = str(c.witness)
            line += f", fixes {c.witness}"
        else:
            line += f", length {c.length}"
        results.append(entry)
        rep.add(line)
    valence = ct_valence(base_vertex(family, 1), F)
    rep.data.update({"element": str(g), "trees": results, "valence": json_val(valence)})
    rep.add(f"valence {json_val(valence)}")
    return rep.emit(True)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--out", help="also write the report to this file")
    common.add_argument("--seed", type=int, default=0)
    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--p", type=int, default=5, help="prime (default 5)")
    field_opts.add_argument("--place", default="inf", help='"inf", "x" or "poly:<expr>"')

    parser = argparse.ArgumentParser(prog="lftrees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-matfrm", parents=[common, field_opts], help="check the parametric family identities")
    s.add_argument("--params", help="c,h,d,delta as expressions in x")
    s.set_defaults(func=cmd_verify_matfrm)

    s = sub.add_parser("certify-surface", parents=[common, field_opts], help="certify the builtin surface representation")
    s.set_defaults(func=cmd_certify_surface)

    s = sub.add_parser("word", parents=[common, field_opts], help="surface-group words")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--eval", help="word to evaluate, e.g. abAB")
    g.add_argument("--nf", help="word to put in amalgam normal form")
    g.add_argument("--loxodromify", help="comma-separated words")
    s.add_argument("--n-max", type=int, dest="n_max")
    s.set_defaults(func=cmd_word)

    s = sub.add_parser("bt", parents=[common, field_opts], help="Bruhat-Tits tree computations")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--dist", nargs=2, metavar="M", help="two basis matrices (optionally M@place)")
    g.add_argument("--classify", metavar="M")
    g.add_argument("--fixed", metavar="M")
    g.add_argument("--neighbors", metavar="V", help='"base" or a basis matrix')
    s.add_argument("--radius", type=int)
    s.set_defaults(func=cmd_bt)

    s = sub.add_parser("coset", parents=[common], help="coset-construction trees")
    s.add_argument("--family", choices=tuple(TREE_COUNT), required=True)
    s.add_argument("--group", default="C2", help="label group: Cn or S3")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--stabiliser", help='"default-vertices", "i=2 j=-1" or "tree:level,..."')
    g.add_argument("--classify", metavar="ELEMENT")
    s.add_argument("--tree", type=int)
    s.add_argument("--window", help="lo:hi")
    s.add_argument("--shift-bound", type=int, dest="shift_bound")
    s.set_defaults(func=cmd_coset)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except (LFTreesError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
