"""Command-line interface.

Every command prints ``key=value`` report lines.  Exit status: 0 when all
checks pass, 1 on a certification failure, 2 on bad input or a malformed file.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import assembly, curve, designs, diffsets, formats, fusion, harmonic
from .algebra import AbelianGroup, parse_element_set
from .frames import angle_report, classify, is_flat, is_unit_norm, row_identity_check, tightness
from .numerics import Tolerance, same_values


class UsageError(Exception):
    pass


class Report:
    def __init__(self):
        self.items = []
        self.failed = []

    def add(self, key, value):
        self.items.append((key, _show(value)))

    def check(self, name, ok, detail=""):
        self.add(f"check.{name}", "pass" if ok else "fail")
        if not ok:
            self.failed.append(name)
            if detail:
                self.add(f"check.{name}.detail", detail)
        return ok

    @property
    def ok(self):
        return not self.failed

    def render(self):
        return "\n".join(f"{k}={v}" for k, v in self.items)


def _show(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".10g")
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_show(x) for x in v) + "]"
    if v is None:
        return "none"
    return str(v)


def frame_report(F, report=None):
    r = report or Report()
    r.add("object", "FRAME")
    r.add("m", F.m)
    r.add("n", F.n)
    r.add("field", F.field_tag)
    unit = r.check("unit_norm", is_unit_norm(F))
    a = tightness(F)
    r.check("tight", a is not None)
    r.add("a", a)
    if unit and a is not None:
        r.check("row_identity", row_identity_check(F))
    r.add("flat", is_flat(F))
    c = classify(F)
    r.add("classification", str(c))
    if c.report is not None:
        rep = c.report
        r.add("angles", list(rep.angles))
        r.add("d", rep.d)
        r.add("equidistributed", rep.equidistributed)
        if rep.multiplicities is not None:
            r.add("multiplicities", list(rep.multiplicities))
        r.add("coherence", rep.coherence)
        r.add("welch", rep.welch)
    return r


def steiner_report(S, report=None):
    r = report or Report()
    r.add("object", "STEINER")
    for key in ("v", "k", "s", "m"):
        r.add(key, getattr(S, key))
    r.check("steiner", True)
    return r


def fusion_report(FF, report=None):
    r = report or Report()
    r.add("object", "FUSION")
    r.add("n", FF.n)
    r.add("l", FF.l)
    r.add("m", FF.m)
    a = fusion.verify_tight_fusion(FF)
    r.check("tight", a is not None)
    r.add("a", a)
    angles = fusion.chordal_angles(FF)
    r.add("chordal_angles", angles)
    r.add("classification", {1: "ETFF", 2: "BTFF"}.get(len(angles), f"chordally-{len(angles)}-angular"))
    return r


def _write(path, text):
    Path(path).write_text(text)


def _tol(args):
    try:
        return Tolerance(args.tol, args.cluster_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _diffset_lines(r, D):
    r.add("group", "x".join(map(str, D.group.factors)))
    r.add("S", D.display_S())
    r.add("params", list(D.params))
    r.add("kind", D.kind)


# ---- commands --------------------------------------------------------------

def cmd_construct(args):
    tol = _tol(args)
    r = Report()
    kind = args.kind
    if kind == "steiner":
        build = designs.affine_steiner if args.family == "affine" else designs.projective_steiner
        S = build(args.q, args.a)
        out = args.out or f"{args.family}_q{args.q}_a{args.a}.steiner"
        _write(out, designs.save_steiner(S))
        r.add("file", out)
        steiner_report(S, r)
        return r
    if kind == "plucker-example":
        FF, F = fusion.build_plucker_example(tol)
        stem = args.out or "plucker_example"
        _write(f"{stem}.fusion", formats.dump_fusion(FF))
        _write(f"{stem}.frame", formats.dump_frame(F))
        r.add("fusion_file", f"{stem}.fusion")
        r.add("frame_file", f"{stem}.frame")
        fusion_report(FF, r)
        r.add("embedded", "FRAME")
        frame_report(F, r)
        ok = fusion.is_plucker_etf(F, FF)
        r.add("plucker_etf", ok)
        r.check("plucker_etf", ok)
        return r

    D = None
    if kind == "harmonic":
        if not args.group or not args.subset:
            raise UsageError("harmonic needs --group and --subset")
        G = AbelianGroup.parse(args.group)
        F = harmonic.harmonic_frame(G, parse_element_set(args.subset, G), tol)
        name = f"harmonic_{args.group}"
    elif kind == "singer":
        D, name = diffsets.singer(_need(args.q, "--q")), f"singer_q{args.q}"
    elif kind == "picket":
        D, name = diffsets.picket_fence(_need(args.q, "--q")), f"picket_q{args.q}"
    elif kind == "simplectic":
        D, name = diffsets.simplectic(_need(args.n, "--n")), f"simplectic_n{args.n}"
    elif kind == "curve":
        F = curve.curve_frame(_need(args.t, "--t"), tol)
        name = f"curve_t{args.t}"
    else:
        raise UsageError(f"unknown construction {kind!r}")
    if D is not None:
        check = harmonic.harmonic_from_diffset(D, tol)
        F = check.frame
        _diffset_lines(r, D)
        r.add("predicted_angles", list(check.predicted))
        r.check("predicted_match", check.match)
    if kind == "curve":
        r.add("t", args.t)
        r.add("predicted_angles", list(curve.curve_angles(args.t)))
    out = args.out or f"{name}.frame"
    _write(out, formats.dump_frame(F))
    r.add("file", out)
    frame_report(F, r)
    if kind == "curve":
        r.check("predicted_match", same_values(curve.curve_angles(args.t), angle_report(F).angles, tol))
    return r


def _need(value, flag):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def cmd_verify(args):
    tol = _tol(args)
    try:
        text = Path(args.path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    first = text.split(None, 1)[0] if text.strip() else ""
    if first == "FRAME":
        return frame_report(formats.load_frame(text, tol))
    if first == "STEINER":
        try:
            return steiner_report(designs.load_steiner(text))
        except designs.SteinerError as exc:
            if exc.condition in ("format", "shape", "binary"):
                raise formats.FormatError(str(exc)) from None
            r = Report()
            r.add("object", "STEINER")
            r.check("steiner", False, f"{exc.condition}: {exc}")
            return r
    if first == "FUSION":
        n, l, m, mats = formats.load_fusion_matrices(text)
        r = Report()
        try:
            FF = fusion.FusionFrame(tuple(fusion.Projection.of(M, tol) for M in mats), tol)
        except fusion.ProjectionError as exc:
            r.add("object", "FUSION")
            r.check("projections", False, str(exc))
            return r
        r.check("projections", FF.l == l, f"header rank {l}, projections have rank {FF.l}")
        return fusion_report(FF, r)
    raise formats.FormatError(f"unrecognised file header {first!r}")


def cmd_assemble(args):
    tol = _tol(args)
    r = Report()
    if args.family:
        if args.q is None:
            raise UsageError("--family needs --q")
        rep = assembly.corollary_params(args.family, args.q, args.a, args.geometry)
        steiner, H = assembly.family_blocks(args.family, args.q, args.a, args.geometry, tol)
        blocks = [H]
        r.add("family", args.family)
        r.add("q", args.q)
    else:
        if not args.steiner or not args.blocks:
            raise UsageError("assemble needs --family or both --steiner and --blocks")
        steiner = designs.load_steiner(Path(args.steiner).read_text())
        blocks = [formats.load_frame(Path(p).read_text(), tol) for p in args.blocks]
        rep = None
    for key in ("v", "k", "s", "m"):
        r.add(f"steiner.{key}", getattr(steiner, key))
    if args.force:
        if len(blocks) == 1:
            blocks = blocks * steiner.v
        result = assembly.assemble(assembly.AssemblySpec(steiner, tuple(blocks), "forced"), force=True, tol=tol)
        r.add("marker", "uncertified-prediction")
    else:
        spec = assembly.make_spec(steiner, blocks)
        r.add("mode", spec.mode)
        result = assembly.assemble(spec, tol=tol)
        r.add("predicted_angles", list(result.predicted))
    r.add("empirical_angles", list(result.empirical))
    if rep is not None:
        r.add("paper_n", rep.claimed[0])
        r.add("paper_m", rep.claimed[1])
        r.add("computed_n", result.frame.n)
        r.add("computed_m", result.frame.m)
        r.add("corollary_consistent", rep.consistent)
        for note in rep.notes:
            r.add("discrepancy", note)
    out = args.out or (f"{args.family}_q{args.q}.frame" if args.family else "assembled.frame")
    _write(out, formats.dump_frame(result.frame))
    r.add("file", out)
    frame_report(result.frame, r)
    return r


def cmd_search(args):
    G = AbelianGroup.parse(args.group)
    A = parse_element_set(args.relative, G) if args.relative else None
    hits = diffsets.search(G, args.size, args.kind, A)
    r = Report()
    r.add("group", args.group)
    r.add("size", args.size)
    r.add("kind", args.kind)
    r.add("count", len(hits))
    for D in hits:
        r.add("hit", f"S={_show(D.display_S())} A={_show([G.display(a) for a in D.A])} "
                     f"params={_show(list(D.params))} kind={D.kind}")
    return r


def cmd_primes(args):
    pairs = assembly.prime_power_pairs(args.limit)
    r = Report()
    r.add("limit", args.limit)
    r.add("count", len(pairs))
    for q, label in pairs:
        r.add("pair", f"{q} {q + 1} {label}")
    proper = assembly.proper_power_pairs(args.limit)
    r.add("proper_power_pairs", proper)
    r.check("catalan", proper == [8] if args.limit >= 8 else proper == [])
    return r


def cmd_params(args):
    rep = assembly.corollary_params(args.corollary, args.q, args.a, args.geometry)
    r = Report()
    r.add("family", rep.family)
    r.add("q", rep.q)
    r.add("paper_n", rep.claimed[0])
    r.add("paper_m", rep.claimed[1])
    r.add("paper_angles", list(rep.claimed[2]))
    if rep.computed is not None:
        r.add("n", rep.computed[0])
        r.add("m", rep.computed[1])
        r.add("angles", list(rep.computed[2]))
    r.add("consistent", rep.consistent)
    for note in rep.notes:
        r.add("note", note)
    return r


def build_parser():
    p = argparse.ArgumentParser(prog="btfkit", description=__doc__.splitlines()[0])
    p.add_argument("--tol", type=float, default=1e-9, help="entrywise / residual tolerance")
    p.add_argument("--cluster-tol", type=float, default=1e-7, help="angle clustering gap")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a frame or Steiner matrix")
    c.add_argument("kind", choices=["harmonic", "singer", "picket", "simplectic", "steiner", "curve",
                                    "plucker-example"])
    c.add_argument("--group")
    c.add_argument("--subset")
    c.add_argument("--q", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--a", type=int, default=2)
    c.add_argument("--family", choices=["affine", "projective"], default="projective")
    c.add_argument("--t", type=float)
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="certify a FRAME, STEINER or FUSION file")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("assemble", help="assemble a Steiner BTF")
    a.add_argument("--steiner")
    a.add_argument("--blocks", nargs="+")
    a.add_argument("--family", choices=assembly.FAMILIES)
    a.add_argument("--q", type=int)
    a.add_argument("--a", type=int, default=2)
    a.add_argument("--geometry", choices=["affine", "projective"])
    a.add_argument("--force", action="store_true")
    a.add_argument("--out", "-o")
    a.set_defaults(func=cmd_assemble)

    s = sub.add_parser("search", help="exhaustive bidifference-set search")
    s.add_argument("--group", required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--kind", choices=diffsets.KINDS, required=True)
    s.add_argument("--relative")
    s.set_defaults(func=cmd_search)

    pr = sub.add_parser("primes", help="consecutive prime-power pairs")
    pr.add_argument("--limit", type=int, required=True)
    pr.set_defaults(func=cmd_primes)

    pa = sub.add_parser("params", help="corollary parameter table entry")
    pa.add_argument("--corollary", choices=assembly.FAMILIES, required=True)
    pa.add_argument("--q", type=int, required=True)
    pa.add_argument("--a", type=int, default=2)
    pa.add_argument("--geometry", choices=["affine", "projective"])
    pa.set_defaults(func=cmd_params)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except assembly.CertificationError as exc:
        print(f"error: certification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render())
    if not report.ok:
        print(f"error: failed checks: {', '.join(report.failed)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
