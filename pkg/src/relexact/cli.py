"""Command-line front end.

Exit codes: 0 predicate true or task done, 1 predicate false or violations
found, 2 invalid input, 3 a search or generation budget ran out.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Optional, Sequence

from . import documents
from .diagrams import check_lemma, no_functor_demo
from .errors import GenerationExhausted, InvalidInput, RelexactError, SearchExhausted
from .essentials import complement, is_essential, socle
from .exactness import CochainComplex, cohomology, is_e_exact, is_exact, is_F_exact
from .intlat import snf
from .localize import is_loc_exact, localize_module, localize_morphism
from .modcore import FgModule, Morphism, Submodule
from .spectral import is_spec_exact, spec_parts
from .torsion import (
    GabrielTopology,
    gabriel_torsion,
    is_F_torsion,
    is_F_torsionfree,
    is_nonsingular,
    is_singular,
    singular_submodule,
    z2,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_EXHAUSTED = 0, 1, 2, 3


class _Result:
    def __init__(self, result, certificates=None, violations=None, ok=True, text=None):
        self.result = result
        self.certificates = certificates or {}
        self.violations = violations or []
        self.ok = ok
        self.text = text


def parse_primes(text: str) -> GabrielTopology:
    if text == "all":
        return GabrielTopology.goldie()
    if text == "none":
        return GabrielTopology.of_primes(())
    try:
        primes = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("--primes takes all, none or a list like 2,3") from None
    try:
        return GabrielTopology.of_primes(primes)
    except RelexactError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _gens(S: Submodule) -> list:
    return [list(g) for g in S.generators]


def _expect(obj, kinds, what):
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in (kinds if isinstance(kinds, tuple) else (kinds,)))
        raise InvalidInput("%s expects a %s document" % (what, names))
    return obj


# ---------------------------------------------------------------- commands

def _canon(args, doc):
    pres, _ = documents.module_presentation(doc)
    M = pres.module
    certs = {"to_canonical": pres.to_canonical.tolist(),
             "from_canonical": pres.from_canonical.tolist()}
    return _Result({"invariants": list(M.invariants), "module": str(M)}, certs,
                   text="%s  invariants %s" % (M, list(M.invariants)))


def _snf(args, doc):
    _, A = documents.module_presentation(doc)
    dec = snf(A)
    certs = {"U": dec.U.tolist(), "D": dec.D.tolist(), "V": dec.V.tolist()}
    return _Result({"diagonal": dec.diagonal, "rank": dec.rank}, certs,
                   text="diagonal %s" % dec.diagonal)


def _submodule_input(obj, what) -> Submodule:
    if not isinstance(obj, Submodule):
        raise InvalidInput("%s expects a module document with a submodule field" % what)
    return obj


def _essential(args, doc):
    S = _submodule_input(documents.parse_document(doc), "essential")
    M = S.ambient
    value = is_essential(S, M)
    certs = {"rank_submodule": S.rank, "rank_module": M.rank, "socle": _gens(socle(M))}
    return _Result(value, certs, ok=value, text="essential" if value else "not essential")


def _complement(args, doc):
    S = _submodule_input(documents.parse_document(doc), "complement")
    cert = complement(S, S.ambient, args.seed if args.seed_given else None, args.bound)
    certs = {"intersection_zero": cert.witness_intersection_zero,
             "sum_essential": cert.witness_sum_essential}
    return _Result({"complement": _gens(cert.complement)}, certs,
                   text="complement generated by %s" % _gens(cert.complement))


def _singular(args, doc):
    obj = documents.parse_document(doc)
    M = _expect(obj, FgModule, "singular")
    Z = singular_submodule(M.ring, M)
    result = {"singular_submodule": _gens(Z), "z2": _gens(z2(M.ring, M)),
              "is_singular": is_singular(M), "is_nonsingular": is_nonsingular(M)}
    return _Result(result, text="Z(M) generated by %s" % _gens(Z))


def _gabriel(args, doc):
    M = _expect(documents.parse_document(doc), FgModule, "gabriel-torsion")
    F = args.primes
    T = gabriel_torsion(F, M)
    result = {"torsion": _gens(T), "is_torsion": is_F_torsion(F, M),
              "is_torsionfree": is_F_torsionfree(F, M)}
    return _Result(result, text="t_F(M) generated by %s" % _gens(T))


def _check(args, doc):
    c = _expect(documents.parse_document(doc), CochainComplex, "check")
    notion = args.notion
    certs = {}
    if notion == "exact":
        value = is_exact(c)
        certs["cohomology"] = [list(H.invariants) for H in cohomology(c)]
    elif notion == "e-exact":
        value = is_e_exact(c)
        certs["cohomology"] = [list(H.invariants) for H in cohomology(c)]
    elif notion == "f-exact":
        value = is_F_exact(c, args.primes)
        certs["cohomology"] = [list(H.invariants) for H in cohomology(c)]
    else:
        value = is_spec_exact(c)
        certs["spec_parts"] = []
        for f in c.padded():
            p = spec_parts(f)
            certs["spec_parts"].append({"kernel": p.kernel.as_dict(), "image": p.image.as_dict(),
                                        "cokernel": p.cokernel.as_dict()})
    return _Result(value, certs, ok=value, text="%s: %s" % (notion, "yes" if value else "no"))


def _localize(args, doc):
    obj = documents.parse_document(doc)
    F = args.primes
    if isinstance(obj, FgModule):
        L = localize_module(obj, F)
        return _Result({"invariants": list(L.invariants), "module": str(L)}, text=str(L))
    if isinstance(obj, Morphism):
        L = localize_morphism(obj, F)
        result = {"source": list(L.source.invariants), "target": list(L.target.invariants),
                  "matrix": L.matrix.tolist(), "surjective": L.is_surjective(),
                  "injective": L.is_injective()}
        return _Result(result, text="%s -> %s %s" % (L.source, L.target, L.matrix.tolist()))
    if isinstance(obj, CochainComplex):
        value = is_loc_exact(obj, F)
        return _Result({"exact": value}, ok=value,
                       text="localized complex exact: %s" % ("yes" if value else "no"))
    raise InvalidInput("localize expects a module, morphism or complex document")


def _lemma(args, doc):
    kind = args.kind.replace("-f", "_F")
    report = check_lemma(kind, args.trials, args.seed, args.primes)
    d = report.as_dict()
    violations = d.pop("violations")
    text = "%s: %d instances from %d candidates, %d violations" % (
        args.kind, report.instances, report.candidates, len(violations))
    return _Result(d, violations=violations, ok=not violations, text=text)


def _demo(args, doc):
    rep = no_functor_demo(args.seed)
    lines = ["%s: %s (expected %s)" % (c["check"], c["value"], c["expected"]) for c in rep["checks"]]
    return _Result(rep, ok=rep["ok"], text="\n".join(lines))


_NEEDS_INPUT = {"canon", "snf", "essential", "complement", "singular", "gabriel-torsion",
                "check", "localize"}
_HANDLERS = {
    "canon": _canon, "snf": _snf, "essential": _essential, "complement": _complement,
    "singular": _singular, "gabriel-torsion": _gabriel, "check": _check, "localize": _localize,
    "lemma": _lemma, "demo": _demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", help="input JSON document (default: stdin)")
    common.add_argument("--primes", type=parse_primes, default=GabrielTopology.goldie(),
                        help="topology: all, none, or primes like 2,3 (default: all)")
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    p = argparse.ArgumentParser(prog="relexact", description="Relative exactness for modules over Z and Z/n.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("canon", "snf", "essential", "singular", "gabriel-torsion", "localize"):
        sub.add_parser(name, parents=[common])
    c = sub.add_parser("complement", parents=[common])
    c.add_argument("--bound", type=int, default=3, help="max |entry| of free candidate vectors")
    c = sub.add_parser("check", parents=[common])
    c.add_argument("notion", choices=["exact", "e-exact", "f-exact", "spec-exact"])
    c = sub.add_parser("lemma", parents=[common])
    c.add_argument("kind", choices=["four", "five", "grid", "four-f"])
    c = sub.add_parser("demo", parents=[common])
    c.add_argument("which", choices=["no-functor"])
    return p


def _inputs(args, doc) -> dict:
    out = {}
    if doc is not None:
        out["document"] = doc
    if args.command in ("gabriel-torsion", "localize", "lemma") or \
            (args.command == "check" and args.notion == "f-exact"):
        out["primes"] = args.primes.label()
    if args.command == "complement":
        out["bound"] = args.bound
    if args.command == "check":
        out["notion"] = args.notion
    if args.command == "lemma":
        out["kind"] = args.kind
        out["trials"] = args.trials
    return out


def run_command(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        # argparse reports usage errors and --help on the process streams
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    command = args.command + (" " + getattr(args, "notion", getattr(args, "kind", getattr(args, "which", ""))))
    command = command.strip()

    doc = None
    result, code, error = None, EXIT_OK, None
    try:
        if args.command in _NEEDS_INPUT:
            if args.infile:
                try:
                    with open(args.infile) as fh:
                        text = fh.read()
                except OSError as e:
                    raise InvalidInput("cannot read %s: %s" % (args.infile, e.strerror))
            else:
                text = stdin.read()
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as e:
                raise InvalidInput("not valid JSON: %s" % e) from None
            if not isinstance(doc, dict):
                raise InvalidInput("a document must be a JSON object")
        if args.command == "lemma" and args.trials < 0:
            raise InvalidInput("--trials must be nonnegative")
        result = _HANDLERS[args.command](args, doc)
        code = EXIT_OK if result.ok else EXIT_FALSE
    except (SearchExhausted, GenerationExhausted) as e:
        error, code = e, EXIT_EXHAUSTED
    except RelexactError as e:
        error, code = e, EXIT_INVALID

    if args.json:
        out = {
            "command": command,
            "inputs": _inputs(args, doc),
            "result": result.result if result else {"error": error.reason, "message": str(error)},
            "certificates": result.certificates if result else {},
            "violations": result.violations if result else [],
            "seed": args.seed,
        }
        stdout.write(json.dumps(out, sort_keys=True) + "\n")
    elif error is not None:
        stderr.write("error (%s): %s\n" % (error.reason, error))
    else:
        stdout.write(result.text + "\n")
    return code


def main() -> None:
    sys.exit(run_command())
