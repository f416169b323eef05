import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from relexact.errors import AmbientMismatch, DimensionMismatch, ForeignElement, IllDefined, InvalidInput, RingMismatch
from relexact.intlat import IntMatrix
from relexact.modcore import (
    ZZ,
    FgModule,
    Morphism,
    Ring,
    Zmod,
    canonical_form,
    direct_sum,
    hom_parts,
    image_of,
    intersect,
    lift,
    make_morphism,
    module,
    preimage,
    present,
    quotient,
    span,
    whole,
    zero_submodule,
)
from relexact.sampling import random_module, random_morphism, random_submodule

# Z + Z/2 in canonical order is Z/2 + Z: the free summand is coordinate 1
Z_Z2 = module(2, 0)


def test_canonical_form_examples():
    assert canonical_form(ZZ, 2, IntMatrix([[2, 0], [0, 3]])).invariants == (6,)
    assert canonical_form(ZZ, 2, IntMatrix([[], []], cols=0)).invariants == (0, 0)
    assert canonical_form(Zmod(4), 1, IntMatrix([[2]])).invariants == (2,)


def test_z2_plus_z3_is_z6_by_isomorphism_search():
    # find an element of order 6 in Z/2 + Z/3 by brute force
    orders = {(a, b): next(k for k in range(1, 7) if (k * a) % 2 == 0 and (k * b) % 3 == 0)
              for a in range(2) for b in range(3)}
    assert max(orders.values()) == 6
    assert module(2, 3).invariants == (6,)


def test_canonical_form_idempotent_and_unimodular_invariant():
    rng = random.Random(5)
    for _ in range(100):
        k = rng.randint(1, 3)
        cols = rng.randint(0, 3)
        rel = IntMatrix([[rng.randint(-6, 6) for _ in range(cols)] for _ in range(k)], cols=cols)
        M = canonical_form(ZZ, k, rel)
        assert canonical_form(ZZ, len(M), M.relation_matrix().hstack(
            IntMatrix.zeros(len(M), 0))) == M
        # a random unimodular change of generators leaves the module alone
        U = IntMatrix.identity(k)
        for _ in range(4):
            i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
            if i != j:
                E = [[int(a == b) for b in range(k)] for a in range(k)]
                E[i][j] = rng.randint(-2, 2)
                U = IntMatrix(E) @ U
        assert canonical_form(ZZ, k, U @ rel) == M


def test_module_helper_canonicalizes():
    assert module(0, 2).invariants == (2, 0)
    assert module(4, 2).invariants == (2, 4)
    assert module().is_zero
    with pytest.raises(InvalidInput):
        FgModule(ZZ, (0, 2))
    with pytest.raises(InvalidInput):
        FgModule(ZZ, (2, 3))
    with pytest.raises(InvalidInput):
        FgModule(Zmod(4), (0,))
    with pytest.raises(InvalidInput):
        Ring(1)


def test_make_morphism_examples():
    with pytest.raises(IllDefined):
        make_morphism(module(2), module(4), [[1]])
    f = make_morphism(module(2), module(4), [[2]])
    assert f((1,)) == (2,)
    M = module(2, 4, 0)
    assert Morphism.identity(M).matrix == IntMatrix.identity(3)
    with pytest.raises(IllDefined):
        make_morphism(module(2), module(0), [[1]])
    with pytest.raises(DimensionMismatch):
        make_morphism(module(2), module(4), [[2, 0]])
    with pytest.raises(RingMismatch):
        make_morphism(module(2), module(2, ring=Zmod(2)), [[1]])


def test_hom_parts_examples():
    Z = module(0)
    p = hom_parts(make_morphism(Z, Z, [[2]]))
    assert p.kernel.is_zero and p.image == span(Z, [(2,)]) and p.cokernel.invariants == (2,)
    M, N = module(2, 0), module(3)
    p = hom_parts(Morphism.zero(M, N))
    assert p.kernel == whole(M) and p.image.is_zero and p.cokernel == N
    p = hom_parts(make_morphism(module(4), module(2), [[1]]))
    assert p.kernel == span(module(4), [(2,)]) and p.image == whole(module(2))
    assert p.cokernel.is_zero


def test_span_examples():
    Z = module(0)
    S = span(Z, [(2,)])
    assert (3,) not in S and (4,) in S
    assert span(Z_Z2, []).is_zero
    # the Z summand of Z + Z/2 does not contain the Z/2 generator
    assert (1, 0) not in span(Z_Z2, [(0, 1)])
    with pytest.raises(ForeignElement):
        span(Z, [(1, 2)])


def test_intersect_examples():
    Z = module(0)
    assert intersect(span(Z, [(2,)]), span(Z, [(3,)])) == span(Z, [(6,)])
    assert intersect(span(Z_Z2, [(0, 1)]), span(Z_Z2, [(1, 0)])).is_zero
    S = span(Z_Z2, [(1, 2)])
    assert intersect(S, S) == S
    with pytest.raises(AmbientMismatch):
        intersect(span(Z, []), span(Z_Z2, []))


def test_quotient_examples():
    Z = module(0)
    assert quotient(Z, span(Z, [(2,)]))[0].invariants == (2,)
    M = module(2, 4)
    Q, q = quotient(M, zero_submodule(M))
    assert Q == M and q.matrix == IntMatrix.identity(2)
    assert quotient(Z_Z2, span(Z_Z2, [(0, 1)]))[0].invariants == (2,)


def test_direct_sum_examples():
    ds = direct_sum(module(2), module(2))
    assert ds.module.invariants == (2, 2)
    assert ds.injections[0]((1,)) == (1, 0)
    M = module(2, 0)
    assert direct_sum(M, module()).module == M
    ds = direct_sum(module(2), module(3))
    assert ds.module.invariants == (6,)
    with pytest.raises(RingMismatch):
        direct_sum(module(2), module(2, ring=Zmod(2)))


def test_direct_sum_biproduct_identities():
    rng = random.Random(11)
    for _ in range(40):
        M, N = random_module(rng), random_module(rng)
        ds = direct_sum(M, N)
        (i1, i2), (p1, p2) = ds.injections, ds.projections
        assert (p1 @ i1).matrix == Morphism.identity(M).matrix
        assert (p2 @ i2).matrix == Morphism.identity(N).matrix
        assert (p1 @ i2).is_zero and (p2 @ i1).is_zero
        S = ds.module
        total = IntMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in
                           zip((i1 @ p1).matrix.data, (i2 @ p2).matrix.data)], cols=len(S))
        assert Morphism(S, S, total).matrix == Morphism.identity(S).matrix


def _sub_sets(M, rng, count):
    for _ in range(count):
        S = random_submodule(M, rng, 3)
        yield S, oracles.generated(M, S.generators)


def test_submodule_calculus_against_enumeration():
    rng = random.Random(7)
    for inv in oracles.finite_modules(64):
        M = module(*inv)
        elems = oracles.all_elements(M)
        subs = list(_sub_sets(M, rng, 2))
        (S, Sset), (T, Tset) = subs
        assert S.elements() == set(Sset)
        for x in rng.sample(elems, min(10, len(elems))):
            assert (x in S) == (x in Sset)
        assert set(intersect(S, T).elements()) == Sset & Tset
        assert set((S + T).elements()) == oracles.generated(M, list(Sset | Tset))
        Q, q = quotient(M, S)
        assert Q.order * len(Sset) == M.order
        assert (S <= T) == (Sset <= Tset)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_first_isomorphism_and_counting(seed):
    rng = random.Random(seed)
    M, N = random_module(rng), random_module(rng)
    f = random_morphism(M, N, rng)
    K, I = f.kernel(), f.image()
    assert quotient(M, K)[0] == I.as_module()[0]
    if M.ring.is_integers:
        assert M.rank == K.rank + I.as_module()[0].rank
    if M.is_finite and N.is_finite:
        assert K.as_module()[0].order * I.as_module()[0].order == M.order
        rows = f.matrix.tolist()
        assert set(K.elements()) == oracles.kernel_set(rows, M, N)
        assert set(I.elements()) == oracles.image_set(rows, M, N, oracles.all_elements(M))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_preimage_image_and_composition(seed):
    rng = random.Random(seed)
    A, B, C = random_module(rng), random_module(rng), random_module(rng)
    f, g = random_morphism(A, B, rng), random_morphism(B, C, rng)
    x = tuple(rng.randint(-3, 3) if d == 0 else rng.randrange(d) for d in A.invariants)
    assert (g @ f)(x) == g(f(x))
    T = random_submodule(B, rng)
    P = preimage(f, T)
    assert image_of(f, P) <= T
    for gen in P.generators:
        assert f(gen) in T
    assert f.kernel() <= P


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_is_complete(seed):
    rng = random.Random(seed)
    X, Y, Z = random_module(rng), random_module(rng), random_module(rng)
    t = random_morphism(Y, Z, rng)
    phi = random_morphism(X, Y, rng)
    h = t @ phi
    got = lift(h, t)
    assert got is not None and (t @ got).matrix == h.matrix
    # a map whose image leaves image(t) cannot lift
    h2 = random_morphism(X, Z, rng)
    if not h2.image() <= t.image():
        assert lift(h2, t) is None


def test_zmod_modules_are_torsion_groups():
    R = Zmod(12)
    M = module(2, 6, ring=R)
    assert M.order == 12 and M.is_finite
    with pytest.raises(InvalidInput):
        FgModule(R, (5,))
    # as a presentation, Z/5 over Z/12 collapses to zero
    assert module(5, ring=R).is_zero
    f = make_morphism(M, module(12, ring=R), [[6, 2]])
    assert f((1, 1)) == (8,)


def test_element_reduction_and_order():
    M = module(4, 0)
    assert M.reduce((5, -3)) == (1, -3)
    assert M.element_order((2, 0)) == 2
    assert M.element_order((1, 1)) == 0
    assert sorted(module(2, 2).elements()) == list(itertools.product(range(2), range(2)))
