"""Command-line front end (``rbmod``).

Exit codes: 0 success, 1 mathematical rejection (``DomainError``), 2 parse or
usage error.  ``--machine`` prints a flat, deterministic ``key = value``
record; the default text mode adds a ``because:`` line naming the fact that
justifies each result.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Sequence

from . import classify as cl
from .errors import DomainError, ParseError, RBModError, ScalarSyntaxError
from .fields import QQ, field_of_characteristic
from .grammar import parse_row, parse_scalar
from .linalg import MatrixA, VectorA
from .modfile import dump_rsd, dump_submodule, read_module_file
from .rsdmod import (ModuleType, RSDecomposition, apply_p, build_rsd, complete_to_rsd, flag_of,
                     normalize_singular, rsd_decompose, submodule_type, verify_module_axiom)
from .sampling import ScalarConfig, random_scalar, random_vector
from .scalar import RB_WEIGHT, verify_rb_relation

# traceability tags: the mathematical fact each report rests on
TAG_CLASSIFICATION = "RB-module structures on A^n are classified by (k,r,l) with k+r+l = n"
TAG_ORBITS = "the number of GL_n(A)-orbits equals the number of (k,r,l) with k+r+l = n, i.e. (n+2)(n+1)/2"
TAG_CLASSES = "finitely generated O-submodules of A^n are classified up to GL_n(A) by dim_A(AM), giving n+1 classes"
TAG_SUBMODULE = "an O-submodule is M~ (+) M_f with M~ divisible and M_f free; its orbit is fixed by (dim M~, rank M_f)"
TAG_RSD = "V = M~ (+) V0 (+) N~ with V0 = A M_f = A N_f"
TAG_PROJECTION = "p is the projection onto M along N; it satisfies P(a)p(x) = p(P(a)x + a p(x) - a x)"
TAG_RB = "P(x)P(y) = P(P(x)y) + P(xP(y)) - P(xy) for the projection of k((t)) onto k[[t]]"
TAG_HOM = "Hom between distinct irreducibles is 0; End(A0) = End(A1) = A and End(Ar) = k"
TAG_END = "End of A0^k + Ar^r + A1^l is M_k(A) x M_l(A) x M_r(k)"
TAG_STAB_PAIR = "Stab(M, N) = GL_k(A) x GL_l(A) x GL_r(k)"
TAG_STAB_MODULE = "Stab(M) is block lower triangular with diagonal GL_k(A), GL_r(O), GL_l(A)"
TAG_FIBER = "the fiber of (M, N) -> M is Stab(M) / Stab(M, N); the orbit of M fibers over flags with fiber GL_r(A)/GL_r(O)"
TAG_NORMALIZE = "N ∩ V0 has a basis t^-1 phi(e_i) with phi in GL_r(O), phi = I + tR"
TAG_ISO = "two RB-modules on A^n are isomorphic iff their types (k,r,l) agree"


@dataclass
class Report:
    """Ordered key/value facts plus the tags that justify them."""

    entries: list[tuple[str, str]] = dc_field(default_factory=list)
    tags: list[str] = dc_field(default_factory=list)
    headline: str | None = None  # text mode prints this bare value instead of the first entry

    def add(self, key: str, value) -> "Report":
        self.entries.append((key, _fmt(value)))
        return self

    def tag(self, text: str) -> "Report":
        if text not in self.tags:
            self.tags.append(text)
        return self


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], VectorA):
        return "[" + "; ".join(", ".join(str(x) for x in v) for v in value) + "]"
    if isinstance(value, (list, tuple)) and not value:
        return "[]"
    if isinstance(value, (VectorA, MatrixA)):
        return f"[{value}]"
    return str(value)


def _type_report(mtype: ModuleType) -> Report:
    rep = Report().add("type", mtype).add("orbit_index", cl.orbit_index(mtype))
    rep.add("decomposition", mtype.decomposition())
    if mtype.n == 1:
        rep.add("irreducible", "A0" if mtype.k else ("Ar" if mtype.r else "A1"))
    return rep.tag(TAG_CLASSIFICATION)


def to_report(result) -> Report:
    """Default rendering of plain module outputs."""
    if isinstance(result, Report):
        return result
    if isinstance(result, bool):
        return Report().add("ok", result)
    if isinstance(result, ModuleType):
        return _type_report(result)
    if isinstance(result, cl.FiberReport):
        rep = Report().add("fiber", result.quotient).add("flag_type", "(%d,%d,%d)" % result.flag_type)
        return rep.add("bundle_fiber", result.bundle_fiber).tag(TAG_FIBER)
    if isinstance(result, cl.StructureDescriptor):
        return Report().add("descriptor", result)
    if isinstance(result, RSDecomposition):
        return _type_report(result.type)
    return Report().add("value", result)


def render_report(result, mode: str = "text") -> str:
    rep = to_report(result)
    lines = []
    if mode == "machine":
        lines = [f"{k} = {v}" for k, v in rep.entries]
    else:
        if rep.headline is not None:
            lines.append(rep.headline)
        lines += [f"{k} = {v}" for k, v in rep.entries if rep.headline is None or k != rep.entries[0][0]]
        lines += [f"because: {t}" for t in rep.tags]
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------

def _load(path: str):
    spec = read_module_file(path)
    return spec, spec.submodule(), spec.singular_module()


def _rsd_from(path: str) -> RSDecomposition:
    spec = read_module_file(path)
    return spec.rsd()


def cmd_classify(args) -> Report:
    spec, M, N = _load(args.file)
    if N is None:
        d, r = submodule_type(M)
        flag = flag_of(M)
        rep = Report().add("object", "submodule").add("divisible_dim", d).add("rank", r)
        rep.add("flag_dims", "(%d,%d,%d)" % flag.dims).add("fractional_class", r)
        rep.tag(TAG_SUBMODULE).tag(TAG_CLASSES)
        if args.dump:
            Path(args.dump).write_text(dump_submodule(M, "canonical form"))
            rep.add("dumped", args.dump)
        return rep
    rsd = build_rsd(M, N)
    rep = _type_report(rsd.type)
    if args.dump:
        Path(args.dump).write_text(dump_rsd(rsd, f"canonical form, type {rsd.type}"))
        rep.add("dumped", args.dump)
    return rep


def cmd_decompose(args) -> Report:
    rsd = _rsd_from(args.file)
    c = rsd_decompose(rsd)
    rep = Report().add("type", rsd.type)
    rep.add("dims_m_v0_n", "(%d,%d,%d)" % (len(c.divisible_regular), len(c.v0), len(c.divisible_singular)))
    rep.add("divisible_regular", list(c.divisible_regular)).add("v0", list(c.v0))
    rep.add("divisible_singular", list(c.divisible_singular))
    rep.add("regular_free", list(c.regular_free.columns)).add("singular_free", list(c.singular_free))
    return rep.tag(TAG_RSD)


def cmd_isomorphic(args) -> Report:
    r1, r2 = _rsd_from(args.file1), _rsd_from(args.file2)
    iso = cl.are_isomorphic(r1, r2)
    rep = Report().add("isomorphic", iso).add("type1", r1.type).add("type2", r2.type)
    if iso and args.witness:
        phi = cl.iso_witness(r1, r2)
        rep.add("witness", phi)
    return rep.tag(TAG_ISO)


def _field_arg(p):
    return QQ if not p else field_of_characteristic(p)


def cmd_apply_p(args) -> Report:
    rsd = _rsd_from(args.file)
    try:
        v = VectorA(parse_row(args.vector, rsd.field), rsd.field)
    except ScalarSyntaxError as exc:
        raise ScalarSyntaxError(exc.message, exc.position, "vector") from None
    return Report().add("p", apply_p(rsd, v)).tag(TAG_PROJECTION)


def cmd_verify_rb(args) -> Report:
    field = _field_arg(args.field)
    rep = Report()
    if args.random is not None:
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.random):
            x, y = random_scalar(rng, field), random_scalar(rng, field)
            bad += not verify_rb_relation(x, y)
        rep.add("pairs", args.random).add("field", field).add("weight", RB_WEIGHT).add("violations", bad)
    else:
        x, y = parse_scalar(args.x, field), parse_scalar(args.y, field)
        rep.add("ok", verify_rb_relation(x, y))
    return rep.tag(TAG_RB)


def cmd_verify_module(args) -> Report:
    rsd = _rsd_from(args.file)
    rep = Report()
    if args.random is not None:
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.random):
            a = random_scalar(rng, rsd.field)
            x = random_vector(rng, rsd.ambient_dim, rsd.field, ScalarConfig(val_range=(-4, 4)))
            bad += not verify_module_axiom(rsd, a, x)
        rep.add("pairs", args.random).add("violations", bad)
    else:
        a = parse_scalar(args.a, rsd.field)
        x = VectorA(parse_row(args.x, rsd.field), rsd.field)
        rep.add("ok", verify_module_axiom(rsd, a, x))
    return rep.tag(TAG_PROJECTION)


def cmd_count_orbits(args) -> Report:
    c = cl.count_orbits(args.n)
    rep = Report(headline=str(c)).add("orbits", c)
    return rep.tag(TAG_ORBITS)


def cmd_count_classes(args) -> Report:
    c = cl.count_fractional_classes(args.n)
    return Report(headline=str(c)).add("classes", c).tag(TAG_CLASSES)


def cmd_hom(args) -> Report:
    d = cl.hom_descriptor(cl.Irreducible.parse(args.i), cl.Irreducible.parse(args.j))
    return Report().add("hom", d).tag(TAG_HOM)


def _parse_type(text: str) -> ModuleType:
    try:
        return ModuleType.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc), source="type") from None


def cmd_endalg(args) -> Report:
    return Report().add("end", cl.end_descriptor(_parse_type(args.type))).tag(TAG_END)


def cmd_stabilizer(args) -> Report:
    d = cl.stabilizer_descriptor(_parse_type(args.type), args.which)
    return Report().add("stabilizer", d).tag(TAG_STAB_PAIR if args.which == "pair" else TAG_STAB_MODULE)


def cmd_fiber(args) -> Report:
    return to_report(cl.fiber_descriptor(_parse_type(args.type)))


def cmd_normalize(args) -> Report:
    spec, M, N = _load(args.file)
    rsd = complete_to_rsd(M) if N is None else spec.rsd()
    phi = normalize_singular(rsd)
    rep = Report().add("phi", phi).add("singular_basis", list(rsd.singular_free))
    if N is None:
        rep.add("completed", True)
    return rep.tag(TAG_NORMALIZE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="print key = value records only")
    p = argparse.ArgumentParser(prog="rbmod", description="Rota-Baxter modules over k((t)).",
                                parents=[common])
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common], description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("classify", cmd_classify, "type (k,r,l) of an RB-module file, or orbit data of a submodule")
    sp.add_argument("file")
    sp.add_argument("--dump", metavar="OUT", help="write the canonical form to OUT")
    add("decompose", cmd_decompose, "V = M~ + V0 + N~ and the free parts").add_argument("file")
    sp = add("isomorphic", cmd_isomorphic, "decide isomorphism of two module files")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--witness", action="store_true", help="also print phi with phi(M1, N1) = (M2, N2)")
    sp = add("apply-p", cmd_apply_p, "evaluate the projection p on a vector")
    sp.add_argument("file")
    sp.add_argument("vector", help="entries separated by ','")
    sp = add("verify-rb", cmd_verify_rb, "check the Rota-Baxter relation of P")
    sp.add_argument("x", nargs="?")
    sp.add_argument("y", nargs="?")
    sp.add_argument("--random", type=int, metavar="COUNT")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--field", type=int, default=0, metavar="P", help="0 for Q (default) or a prime")
    sp = add("verify-module", cmd_verify_module, "check the module axiom for p")
    sp.add_argument("file")
    sp.add_argument("--a")
    sp.add_argument("--x")
    sp.add_argument("--random", type=int, metavar="COUNT")
    sp.add_argument("--seed", type=int)
    add("count-orbits", cmd_count_orbits, "number of isomorphism classes on A^n").add_argument("n", type=int)
    add("count-classes", cmd_count_classes, "number of orbits of f.g. O-submodules of A^n").add_argument("n", type=int)
    sp = add("hom", cmd_hom, "Hom between irreducibles A0, Ar, A1")
    sp.add_argument("i")
    sp.add_argument("j")
    add("endalg", cmd_endalg, "endomorphism algebra of a type").add_argument("type", help="k,r,l")
    sp = add("stabilizer", cmd_stabilizer, "stabilizer of (M, N) or of M")
    sp.add_argument("type", help="k,r,l")
    sp.add_argument("--which", choices=["pair", "module_only"], default="pair")
    add("fiber", cmd_fiber, "fiber of (M, N) -> M over a submodule of the type").add_argument("type", help="k,r,l")
    add("normalize", cmd_normalize, "unit frame phi of the singular part").add_argument("file")
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed usage
        return int(exc.code or 0)
    if getattr(args, "random", None) is not None and getattr(args, "seed", None) is None:
        print("error = UsageError\nmessage = --random requires --seed (no hidden entropy)", file=out)
        return 2
    if args.verb == "verify-rb" and args.random is None and (args.x is None or args.y is None):
        print("error = UsageError\nmessage = verify-rb needs X Y or --random COUNT --seed S", file=out)
        return 2
    if args.verb == "verify-module" and args.random is None and (args.a is None or args.x is None):
        print("error = UsageError\nmessage = verify-module needs --a and --x, or --random COUNT --seed S", file=out)
        return 2
    mode = "machine" if getattr(args, "machine", False) else "text"
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error = {type(exc).__name__}", file=out)
        if exc.location:
            print(f"location = {exc.location}", file=out)
        print(f"message = {exc.message}", file=out)
        return 2
    except DomainError as exc:
        print(f"error = {type(exc).__name__}", file=out)
        src = getattr(args, "file", None)
        if src:
            print(f"location = {src}", file=out)
        print(f"message = {exc}", file=out)
        return 1
    except RBModError as exc:  # pragma: no cover - every concrete error is one of the above
        print(f"error = {type(exc).__name__}\nmessage = {exc}", file=out)
        return 1
    out.write(render_report(report, mode))
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
