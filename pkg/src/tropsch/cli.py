"""Command-line front end: ``tropsch <command> [options]``.

Exit codes: 0 success, 1 a yes/no query answered "no", 2 usage or input
error, 3 a size cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import Caps
from .congruence import PiContext, equiv_graded, pi
from .errors import CapExceeded, NoMatroidError, ParseError, TropschError
from .field import format_valued
from .parsing import parse_ideal, parse_trop, parse_weight
from .pipeline import (bend_check_point, build_degree, hilbert_function,
                       initial_degree_model, initial_matroid_check)
from .poly import (Flavor, Relation, TropPoly, default_names, format_monomial,
                   format_poly, format_relation, homogenize, homogenize_relation,
                   initial_form, initial_relation)
from .scalar import format_scalar
from .serialize import dumps, matroid_from_json, matroid_to_json, trop_to_json

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(TropschError):
    pass


# -- argument handling ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--ideal", help="ideal file")
    common.add_argument("-d", "--degree", type=int, help="graded degree")
    common.add_argument("--dmax", type=int, help="largest degree to examine")
    common.add_argument("-w", "--weight", help="comma-separated rational weights")
    common.add_argument("-F", dest="F", help="tropical polynomial")
    common.add_argument("-G", dest="G", help="second tropical polynomial")
    common.add_argument("--vars", help="comma-separated variable names when no ideal is given")
    common.add_argument("--matroid", help="JSON file with a valuated matroid")
    common.add_argument("--method", choices=("fast", "direct"), help="pi algorithm")
    common.add_argument("--json", action="store_true", default=None, help="emit JSON")
    common.add_argument("--seed", type=int, help="seed for randomized checks")
    common.add_argument("--samples", type=int, help="number of random samples")
    common.add_argument("--config", help="file of 'key = value' lines supplying defaults")
    for name in ("monomials", "circuits", "exhaustive"):
        common.add_argument(f"--cap-{name}", type=int, dest=f"cap_{name}",
                            help=f"override the {name} size cap")

    parser = argparse.ArgumentParser(
        prog="tropsch",
        description="Tropical scheme data of homogeneous ideals over Q(t) or Q.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "matroid": "valuated matroid of a graded piece: bases, circuits, valuated circuits",
        "pi": "canonical form of a tropical polynomial",
        "equiv": "decide whether F ~ G lies in the tropicalized congruence",
        "initial": "initial forms at a weight vector",
        "hilbert": "Hilbert function values up to --dmax",
        "bendcheck": "necessary condition for w to lie on the tropical variety",
        "homogenize": "homogenize a Laurent tropical polynomial or relation",
        "axioms": "check exchange relations and canonical-form properties",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


_CONFIG_KEYS = {"ideal", "degree", "dmax", "weight", "F", "G", "vars", "matroid", "method",
                "json", "seed", "samples", "cap_monomials", "cap_circuits", "cap_exhaustive"}
_INT_KEYS = {"degree", "dmax", "seed", "samples", "cap_monomials", "cap_circuits", "cap_exhaustive"}


def apply_config(args: argparse.Namespace, path: str) -> None:
    """Fill options left unset on the command line from a key = value file."""
    base = Path(path).parent
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("-", "_")
        value = value.strip().strip('"').strip("'")
        if not sep or key not in _CONFIG_KEYS:
            raise ParseError(f"unknown config setting {raw.strip()!r}", lineno, 1)
        if getattr(args, key) is not None:
            continue
        if key in _INT_KEYS:
            value = int(value)
        elif key == "json":
            value = value.lower() in ("1", "true", "yes", "on")
        elif key in ("ideal", "matroid"):
            value = str(base / value)
        setattr(args, key, value)


def caps_from(args) -> Caps:
    caps = Caps.from_env()
    over = {k: getattr(args, f"cap_{k}") for k in ("monomials", "circuits", "exhaustive")
            if getattr(args, f"cap_{k}") is not None}
    if over:
        caps = Caps.parse(" ".join(f"{k}={v}" for k, v in over.items()), caps)
    return caps


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            flag = {"F": "-F", "G": "-G", "ideal": "-i", "degree": "-d", "weight": "-w"}.get(n, "--" + n)
            raise UsageError(f"{args.command} needs {flag}")


def _ideal(args):
    _need(args, "ideal")
    return parse_ideal(args.ideal)


def _trop(text, names, flavor=Flavor.PROJECTIVE) -> TropPoly:
    return parse_trop(text, names, flavor=flavor)


def _degree_of(F: TropPoly, args) -> int:
    degs = {sum(u) for u in F.support()}
    if args.degree is not None:
        if degs - {args.degree}:
            raise UsageError(f"-F is not homogeneous of degree {args.degree}")
        return args.degree
    if len(degs) != 1:
        raise UsageError("give -d, or a nonempty homogeneous -F")
    return degs.pop()


def _out(args, doc, text_lines):
    if args.json:
        print(dumps(doc))
    else:
        for line in text_lines:
            print(line)


# -- formatting helpers -----------------------------------------------------------------------


def _label(vm, e, names) -> str:
    if vm.monomial_flavor:
        return format_monomial(e, names) or "1"
    return str(e)


def _set_text(vm, B, names) -> str:
    return "{" + ", ".join(_label(vm, e, names) for e in vm.ordered(B)) + "}"


def _vector_text(vm, coefs: dict, names) -> str:
    parts = []
    for e in vm.ordered(coefs):
        a = coefs[e]
        lab = _label(vm, e, names)
        parts.append(lab if a == 0 else f"{format_scalar(a)} + {lab}")
    if not parts:
        return "inf"
    return parts[0] if len(parts) == 1 else "min(" + ", ".join(parts) + ")"


def _vector_json(vm, coefs: dict):
    return [{"elem": list(e) if isinstance(e, tuple) else e, "coef": format_scalar(coefs[e])}
            for e in vm.ordered(coefs)]


# -- commands ------------------------------------------------------------------------------


def _load_matroid(args, caps):
    """(valuated matroid, variable names or None, degree or None)."""
    if args.matroid:
        doc = json.loads(Path(args.matroid).read_text(encoding="utf-8"))
        return matroid_from_json(doc, caps=caps), None, None
    spec = _ideal(args)
    _need(args, "degree")
    return build_degree(spec, args.degree, caps).matroid, spec.vars, args.degree


def cmd_matroid(args, caps) -> int:
    vm, names, d = _load_matroid(args, caps)
    bases = vm.table()
    circuits = [C for C in vm.circuits() if len(C) > 1]
    vcs = [(C, vm.coefficients(vm.valuated_circuit(C, vm.ordered(C)[0]))) for C in circuits]
    loops = vm.loops()
    # a superset of the matroid file format, so reports can be fed back via --matroid
    doc = matroid_to_json(vm)
    doc.update({"degree": d, "provenance": vm.provenance,
                "loops": [list(e) if isinstance(e, tuple) else e for e in vm.ordered(loops)],
                "circuits": [_vector_json(vm, G) for _, G in vcs]})
    lines = [f"ground: {len(vm.ground)} elements, rank {vm.rank}"
             + (f", degree {d}" if d is not None else ""),
             "loops: " + (_set_text(vm, loops, names) if loops else "none"),
             "bases:"]
    lines += [f"  {_set_text(vm, B, names)}: {format_scalar(v)}" for B, v in bases.items()]
    lines.append("circuits:")
    lines += [f"  {_set_text(vm, C, names)}: {_vector_text(vm, G, names)}" for C, G in vcs]
    _out(args, doc, lines)
    return EXIT_OK


def cmd_pi(args, caps) -> int:
    spec = _ideal(args)
    _need(args, "F")
    F = _trop(args.F, spec.vars)
    d = _degree_of(F, args)
    method = args.method or "fast"
    try:
        ctx = build_degree(spec, d, caps).context
        loops = ctx.loops
        P = pi(ctx, F, method)
    except NoMatroidError:
        loops = None
        P = TropPoly.infinity(spec.nvars)
    doc = {"degree": d, "pi": trop_to_json(P), "text": format_poly(P, spec.vars),
           "dropped_loops": "all" if loops is None else [list(u) for u in sorted(loops)]}
    if loops and not args.json:
        print("note: coefficients of monomials in I_d are dropped: "
              + ", ".join(format_monomial(u, spec.vars) for u in sorted(loops)), file=sys.stderr)
    elif loops is None and not args.json:
        print(f"note: I_{d} contains every monomial of degree {d}", file=sys.stderr)
    _out(args, doc, [format_poly(P, spec.vars)])
    return EXIT_OK


def _contexts(spec, polys, caps):
    out = {}
    for d in sorted({sum(u) for F in polys for u in F.support()}):
        try:
            out[d] = build_degree(spec, d, caps).context
        except NoMatroidError:
            out[d] = None
    return out


def cmd_equiv(args, caps) -> int:
    spec = _ideal(args)
    _need(args, "F", "G")
    F, G = _trop(args.F, spec.vars), _trop(args.G, spec.vars)
    if args.degree is not None:
        _degree_of(F, args), _degree_of(G, args)
    method = args.method or "fast"
    verdict = equiv_graded(_contexts(spec, [F, G], caps), F, G, method)
    _out(args, {"equiv": verdict}, ["true" if verdict else "false"])
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_initial(args, caps) -> int:
    _need(args, "weight")
    w = parse_weight(args.weight)
    if args.ideal is None:
        _need(args, "F")
        flavor = Flavor.LAURENT if args.vars else Flavor.PROJECTIVE
        names = _names(args, flavor, len(w))
        F = _trop(args.F, names, flavor)
        if args.G is not None:
            R = initial_relation(Relation(F, _trop(args.G, names, flavor)), w)
            _out(args, {"lhs": trop_to_json(R.lhs), "rhs": trop_to_json(R.rhs)},
                 [format_relation(R, names)])
        else:
            P = initial_form(F, w)
            _out(args, {"initial": trop_to_json(P)}, [format_poly(P, names)])
        return EXIT_OK
    spec = _ideal(args)
    _need(args, "degree")
    space, im = initial_degree_model(spec, w, args.degree, caps)
    polys = [format_valued(f, spec.vars) for f in space.polys()]
    check = initial_matroid_check(spec, w, args.degree, caps) if im is not None else None
    doc = {"degree": args.degree, "weight": [str(x) for x in w], "basis": polys,
           "dim": space.dim,
           "matroid_check": None if check is None else check.agree}
    lines = [f"in_w(I)_{args.degree} has dimension {space.dim}"] + [f"  {p}" for p in polys]
    if check is not None:
        lines.append("matroid check: " + ("agree" if check.agree else "DISAGREE"))
    _out(args, doc, lines)
    return EXIT_OK if check is None or check.agree else EXIT_FALSE


def cmd_hilbert(args, caps) -> int:
    spec = _ideal(args)
    _need(args, "dmax")
    values = hilbert_function(spec, args.dmax, caps)
    _out(args, {"hilbert": [{"d": d, "value": v} for d, v in values]},
         [f"d={d}: {v}" for d, v in values])
    return EXIT_OK


def cmd_bendcheck(args, caps) -> int:
    spec = _ideal(args)
    _need(args, "weight", "dmax")
    v = bend_check_point(spec, parse_weight(args.weight), args.dmax, caps)
    doc = {"status": "PASS" if v.ok else "FAIL", "dmax": v.dmax, "exact": v.exact,
           "degree": v.degree,
           "witness": None if v.witness is None else format_valued(v.witness, spec.vars)}
    lines = [v.status]
    if v.witness is not None:
        lines.append(f"witness (degree {v.degree}): {format_valued(v.witness, spec.vars)}")
    elif v.exact:
        lines.append("principal ideal: the check is exact")
    _out(args, doc, lines)
    return EXIT_OK if v.ok else EXIT_FALSE


def _names(args, flavor, n=None):
    if args.vars:
        return [v.strip() for v in args.vars.split(",") if v.strip()]
    if n is None:
        raise UsageError(f"{args.command} needs --vars")
    return default_names(n, flavor)


def cmd_homogenize(args, caps) -> int:
    _need(args, "F", "vars")
    names = _names(args, Flavor.LAURENT)
    hnames = ["x0" if "x0" not in names else "x_0"] + names
    F = _trop(args.F, names, Flavor.LAURENT)
    if args.G is None:
        H = homogenize(F)
        _out(args, {"homogenized": trop_to_json(H), "vars": hnames}, [format_poly(H, hnames)])
    else:
        R = homogenize_relation(Relation(F, _trop(args.G, names, Flavor.LAURENT)))
        _out(args, {"lhs": trop_to_json(R.lhs), "rhs": trop_to_json(R.rhs), "vars": hnames},
             [format_relation(R, hnames)])
    return EXIT_OK


def _random_vector(vm, rng, ctx):
    labels = [e for e in vm.ground if e not in ctx.loops]
    k = rng.randint(1, len(labels))
    return vm.vector({e: Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2)))
                      for e in rng.sample(labels, k)})


def _violation_json(violation):
    if violation is None:
        return None
    js = lambda e: list(e) if isinstance(e, tuple) else e
    B, B2, u = violation
    return {"B": [js(e) for e in B], "B2": [js(e) for e in B2], "u": js(u)}


def cmd_axioms(args, caps) -> int:
    vm, names, d = _load_matroid(args, caps)
    rng = random.Random(args.seed if args.seed is not None else 0)
    samples = args.samples if args.samples is not None else 50
    exhaustive = len(vm.bases()) ** 2 <= caps.exhaustive
    verdict = vm.check_plucker(exhaustive=exhaustive, samples=samples, rng=rng)
    ctx = PiContext(vm, d)
    failures = []
    direct_ok = len(vm.ground) <= caps.circuits
    for _ in range(samples):
        F = _random_vector(vm, rng, ctx)
        P = pi(ctx, F, "fast")
        if not P <= F:
            failures.append(("pi(F) <= F", F))
        if pi(ctx, P, "fast") != P:
            failures.append(("pi idempotent", F))
        if P.support() != frozenset(vm.monomial(e) for e in ctx.closure_support(F)):
            failures.append(("supp pi(F) = closure", F))
        if direct_ok and pi(ctx, F, "direct") != P:
            failures.append(("fast = direct", F))
    ok = bool(verdict) and not failures
    pnames = names or [str(e) for e in vm.ground]
    doc = {"plucker": {"ok": verdict.ok, "checked": verdict.checked,
                       "mode": "exhaustive" if exhaustive else "sampled",
                       "violation": _violation_json(verdict.violation)},
           "pi_samples": samples,
           "pi_failures": [{"property": p, "F": trop_to_json(F)} for p, F in failures]}
    lines = [f"plucker ({'exhaustive' if exhaustive else 'sampled'}): "
             + ("ok" if verdict else "FAIL") + f" [{verdict.checked} exchanges]"]
    if verdict.violation is not None:
        B, B2, u = verdict.violation
        lines.append(f"  violation: B={_set_text(vm, B, names)}, B'={_set_text(vm, B2, names)}, "
                     f"u={_label(vm, u, names)}")
    lines.append(f"pi properties on {samples} random F: "
                 + ("ok" if not failures else f"{len(failures)} failures"))
    for p, F in failures[:5]:
        lines.append(f"  {p}: {_vector_text(vm, vm.coefficients(F), names)}")
    _out(args, doc, lines)
    return EXIT_OK if ok else EXIT_FALSE


COMMANDS = {"matroid": cmd_matroid, "pi": cmd_pi, "equiv": cmd_equiv, "initial": cmd_initial,
            "hilbert": cmd_hilbert, "bendcheck": cmd_bendcheck, "homogenize": cmd_homogenize,
            "axioms": cmd_axioms}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            apply_config(args, args.config)
        caps = caps_from(args)
        return COMMANDS[args.command](args, caps)
    except CapExceeded as exc:
        print(f"tropsch: size cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ParseError, NoMatroidError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tropsch: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
