"""The acceptance criteria as plain functions.

Each ``criterion_*`` returns ``(ok, detail)``; the acceptance suite runs them
at full size and the unit tests reuse the generators at smaller sizes.
"""

from __future__ import annotations

import io
import itertools
import json
import random
from pathlib import Path

import oracles
from relexact.cli import run_command
from relexact.diagrams import check_lemma, no_functor_demo
from relexact.essentials import complement, is_essential, random_essential_mono
from relexact.exactness import CochainComplex, is_e_epi, is_e_exact, is_exact, is_F_exact, make_complex
from relexact.intlat import IntMatrix, snf
from relexact.modcore import ZZ, Zmod, make_morphism, module, quotient, ring_module, span
from relexact.sampling import (
    random_complex,
    random_element,
    random_module,
    random_morphism,
    random_submodule,
    random_zmod_module,
)
from relexact.localize import is_loc_exact, is_loc_surjective
from relexact.spectral import is_spec_exact, spec_parts
from relexact.torsion import GOLDIE, GabrielTopology, is_F_torsion, is_F_torsionfree, singular_submodule, z2

GOLDEN = Path(__file__).parent / "golden"
TOPOLOGIES = {"all": GOLDIE, "2": GabrielTopology.of_primes([2]),
              "2,3": GabrielTopology.of_primes([2, 3]), "none": GabrielTopology.of_primes([])}


# ---------------------------------------------------------------- 1. SNF

def criterion_snf(n=1000, seed=1):
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        m, k = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-10, 10) for _ in range(k)] for _ in range(m)]
        A = IntMatrix(rows)
        dec = snf(A)
        diag = dec.diagonal
        nonzero = [d for d in diag if d]
        ok = (dec.U @ A @ dec.V == dec.D
              and abs(dec.U.det()) == 1 and abs(dec.V.det()) == 1
              and all(dec.D[i, j] == 0 for i in range(m) for j in range(k) if i != j)
              and diag[:len(nonzero)] == nonzero
              and all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
              and diag == oracles.minor_gcd_invariants(rows))
        bad += not ok
    return bad == 0, "%d matrices, %d failures" % (n, bad)


# ---------------------------------------------------------------- 2. essentiality

def criterion_essentiality(per_module=5, seed=2):
    rng = random.Random(seed)
    groups = oracles.finite_modules(64)
    total = bad = 0
    for inv in groups:
        M = module(*inv)
        for _ in range(per_module):
            S = span(M, [random_element(M, rng) for _ in range(rng.randint(0, 2))])
            total += 1
            bad += is_essential(S, M) != oracles.brute_is_essential(oracles.generated(M, S.generators), M)
    return bad == 0 and total >= 500, "%d groups, %d submodules, %d disagreements" % (len(groups), total, bad)


# ---------------------------------------------------------------- 3. complements

def _torsion_elements(M):
    ranges = [range(d) if d else range(1) for d in M.invariants]
    return list(itertools.product(*ranges))


def complement_holds(S, M, C) -> bool:
    """S & C = 0 and S + C essential, checked by the definitional oracle on finite parts."""
    if M.is_finite:
        Sset = oracles.generated(M, S.generators)
        Cset = oracles.generated(M, C.generators)
        return Sset & Cset == {M.zero()} and oracles.brute_is_essential(
            oracles.generated(M, list(Sset | Cset)), M)
    # infinite M: every nonzero torsion element has a nonzero multiple in S + C,
    # small boxes of vectors never lie in both S and C, and ranks add up
    T = S + C
    for x in _torsion_elements(M):
        if any(x) and not any(M.reduce([k * a for a in x]) in T and any(M.reduce([k * a for a in x]))
                              for k in range(1, 65)):
            return False
    box = [range(d) if d else range(-2, 3) for d in M.invariants]
    for x in itertools.product(*box):
        if any(x) and x in S and x in C:
            return False
    return T.rank == M.rank


def criterion_complements(n=500, seed=3):
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        M = random_module(rng)
        S = random_submodule(M, rng, 3)
        cert = complement(S, M, rng.choice([None, rng.randint(0, 99)]))
        ok = cert.witness_intersection_zero and cert.witness_sum_essential
        bad += not (ok and complement_holds(S, M, cert.complement))
    return bad == 0, "%d pairs, %d failures" % (n, bad)


# ---------------------------------------------------------------- 4. exactness chain

def _witnesses():
    Z = module(0)
    w1 = make_complex([make_morphism(Z, Z, [[2]])], True, True)
    w2 = make_complex([make_morphism(Z, module(2, 0), [[0], [1]])], True, True)
    return w1, w2


def criterion_chain(n=500, seed=4):
    rng = random.Random(seed)
    bad = 0
    seen = [0, 0, 0]
    for _ in range(n):
        c = random_complex(rng, rng.randint(1, 4))
        ex, ee, ge = is_exact(c), is_e_exact(c), is_F_exact(c, GOLDIE)
        bad += (ex and not ee) + (ee and not ge)
        seen[0] += ex
        seen[1] += ee and not ex
        seen[2] += ge and not ee
    w1, w2 = _witnesses()
    wit = is_e_exact(w1) and not is_exact(w1) and is_F_exact(w2, GOLDIE) and not is_e_exact(w2)
    return bad == 0 and wit, ("%d complexes (exact %d, e-exact only %d, G-exact only %d), "
                              "%d violations, witnesses %s" % (n, *seen, bad, "ok" if wit else "FAIL"))


# ---------------------------------------------------------------- 5. spec-exact => e-exact

def criterion_short_spec(n=500, seed=5):
    rng = random.Random(seed)
    hits = bad = 0
    for _ in range(n):
        f, g = random_complex(rng, 2).differentials
        c = CochainComplex((f, g), True, True)
        if is_spec_exact(c):
            hits += 1
            bad += not is_e_exact(c)
    return bad == 0 and hits > 0, "%d short complexes, %d spec-exact, %d violations" % (n, hits, bad)


# ---------------------------------------------------------------- 6. complement independence

def criterion_independence(n=200, seed=6, orders=(None, 1, 2, 3, 4)):
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        M, N = random_module(rng), random_module(rng)
        f = random_morphism(M, N, rng)
        parts = {spec_parts(f, o)[:3] for o in orders}
        c = make_complex([f], rng.random() < 0.5, True)
        exact = {is_spec_exact(c, o) for o in orders}
        bad += len(parts) != 1 or len(exact) != 1
    return bad == 0, "%d morphisms x %d orders, %d discrepancies" % (n, len(orders), bad)


# ---------------------------------------------------------------- 7. localization

def e_epi_morphism(rng):
    """A surjection followed by an essential mono."""
    M = random_module(rng)
    Q, q = quotient(M, random_submodule(M, rng))
    return random_essential_mono(Q, rng) @ q


def into_torsionfree(rng):
    M = random_module(rng, max_rank=3)
    N = random_module(rng, torsion_free=True)
    return random_morphism(M, N, rng)


def short_e_exact(rng):
    while True:
        f, g = random_complex(rng, 2).differentials
        c = CochainComplex((f, g), True, True)
        if is_e_exact(c):
            return c


def loc_surjective_iff_torsion_cokernel(f, F):
    """(a) F-torsion cokernel gives a surjection; (b) the converse for F-torsionfree targets."""
    coker_t = is_F_torsion(F, f.parts.cokernel)
    surj = is_loc_surjective(f, F)
    if coker_t and not surj:
        return False
    if surj and is_F_torsionfree(F, f.target) and not coker_t:
        return False
    return True


def criterion_localization(n=500, n_surj=300, seed=7):
    rng = random.Random(seed)
    bad_a = sum(not is_loc_surjective(e_epi_morphism(rng), GOLDIE) for _ in range(n))
    got = bad_b = 0
    while got < n:
        f = into_torsionfree(rng)
        if is_loc_surjective(f, GOLDIE):
            got += 1
            bad_b += not is_e_epi(f)
    bad_c = sum(not is_loc_exact(short_e_exact(rng), GOLDIE) for _ in range(n))
    bad_d = 0
    for F in TOPOLOGIES.values():
        for _ in range(n_surj):
            M, N = random_module(rng), random_module(rng)
            bad_d += not loc_surjective_iff_torsion_cokernel(random_morphism(M, N, rng), F)
    ok = not (bad_a or bad_b or bad_c or bad_d)
    return ok, "(a) %d/%d (b) %d/%d (c) %d/%d (d) %d/%d violations" % (
        bad_a, n, bad_b, n, bad_c, n, bad_d, n_surj * len(TOPOLOGIES))


# ---------------------------------------------------------------- 8. lemma harness

def criterion_lemmas(trials=200, seed=8):
    lines = []
    ok = True
    for kind, F in (("four", GOLDIE), ("five", GOLDIE), ("grid", GOLDIE), ("four_F", TOPOLOGIES["2"])):
        rep = check_lemma(kind, trials, seed, F)
        again = check_lemma(kind, trials, seed, F)
        same = json.dumps(rep.as_dict(), sort_keys=True) == json.dumps(again.as_dict(), sort_keys=True)
        good = rep.passed and rep.instances == trials and same
        ok = ok and good
        lines.append("%s %d/%d violations %d%s" % (kind, rep.instances, rep.candidates,
                                                   len(rep.violations), "" if same else " NONDETERMINISTIC"))
    return ok, "; ".join(lines)


# ---------------------------------------------------------------- 9. demo

def criterion_demo(seed=0):
    rep = no_functor_demo(seed)
    bad = [c["check"] for c in rep["checks"] if c["value"] != c["expected"]]
    return rep["ok"] and not bad, "%d checks, mismatches: %s" % (len(rep["checks"]), bad or "none")


# ---------------------------------------------------------------- 10. radicals

def criterion_radicals(n=300, seed=10):
    rng = random.Random(seed)
    bad_z = 0
    for _ in range(n):
        M = random_module(rng)
        Q, _ = quotient(M, singular_submodule(ZZ, M))
        bad_z += not singular_submodule(ZZ, Q).is_zero
    R4 = Zmod(4)
    W = ring_module(R4)
    Q, _ = quotient(W, singular_submodule(R4, W))
    witness = not singular_submodule(R4, Q).is_zero and z2(R4, W) == span(W, [(1,)])
    bad_2 = 0
    for _ in range(n):
        R = Zmod(rng.randint(2, 16))
        M = random_zmod_module(rng, R.modulus)
        Z2 = z2(R, M)
        Q, _ = quotient(M, Z2)
        bad_2 += not (singular_submodule(R, M) <= Z2 and z2(R, Q).is_zero)
    ok = bad_z == 0 and witness and bad_2 == 0
    return ok, "Z(M/Z(M)) failures %d/%d, Z/4 witness %s, Z2 radical failures %d/%d" % (
        bad_z, n, "ok" if witness else "FAIL", bad_2, n)


# ---------------------------------------------------------------- 11. CLI golden files

def load_golden_cases():
    cases = []
    for spec in sorted(GOLDEN.glob("*.cmd.json")):
        name = spec.name[:-len(".cmd.json")]
        case = json.loads(spec.read_text())
        case["name"] = name
        cases.append(case)
    return cases


def run_case(case):
    stdin = io.StringIO(case.get("stdin", ""))
    out, err = io.StringIO(), io.StringIO()
    argv = [a.replace("@GOLDEN", str(GOLDEN)) for a in case["argv"]]
    code = run_command(argv, stdin, out, err)
    return code, out.getvalue(), err.getvalue()


def criterion_cli():
    cases = load_golden_cases()
    bad = []
    codes = set()
    commands = set()
    for case in cases:
        code, out, err = run_case(case)
        want_out = (GOLDEN / (case["name"] + ".stdout")).read_text()
        want_err = (GOLDEN / (case["name"] + ".stderr")).read_text()
        if code != case["exit"] or out != want_out or err != want_err:
            bad.append(case["name"])
        codes.add(code)
        commands.add(case["argv"][0])
    every = {"canon", "snf", "essential", "complement", "singular", "gabriel-torsion",
             "check", "localize", "lemma", "demo"}
    ok = not bad and len(cases) >= 12 and codes >= {0, 1, 2, 3} and commands >= every
    return ok, "%d golden files, exit codes %s, missing commands %s, mismatches %s" % (
        len(cases), sorted(codes), sorted(every - commands) or "none", bad or "none")
