"""Essential submodules, socles and complements.

Over Z (and hence over Z/n, whose submodules are just subgroups) a submodule
``S <= M`` is essential exactly when it has full rank and contains the socle
of the torsion part of ``M``.  The brute-force definition is kept in the test
suite as the oracle for this criterion.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional, Union

from .errors import AmbientMismatch, SearchExhausted
from .intlat import IntMatrix, prime_factors
from .modcore import (
    FgModule,
    Morphism,
    Submodule,
    intersect,
    lift,
    span,
    whole,
    zero_submodule,
)

# torsion parts larger than this are searched through their socle only
_FULL_ENUMERATION_LIMIT = 4096


def socle(M: FgModule) -> Submodule:
    gens = []
    for i, d in enumerate(M.invariants):
        for p in prime_factors(d):
            gens.append(tuple((d // p) if j == i else 0 for j in range(len(M))))
    return span(M, gens)


def torsion_part(M: FgModule) -> Submodule:
    return span(M, [M.basis(i) for i in M.torsion_indices])


def is_essential(S: Submodule, M: Union[FgModule, Submodule]) -> bool:
    """Whether ``S`` is essential in ``M`` (a module, or a submodule containing ``S``)."""
    T = whole(M) if isinstance(M, FgModule) else M
    if S.ambient != T.ambient:
        raise AmbientMismatch("%s is not a submodule of %s" % (S, T.ambient))
    if not S.issubset(T):
        raise AmbientMismatch("submodule is not contained in the candidate extension")
    if S.rank != T.rank:
        return False
    soc = socle(T.ambient)
    if not isinstance(M, FgModule):
        soc = intersect(soc, T)
    return soc.issubset(S)


@dataclass(frozen=True)
class ComplementCertificate:
    complement: Submodule
    witness_intersection_zero: bool
    witness_sum_essential: bool


def _candidates(M: FgModule, bound: int):
    tors = M.torsion_indices
    # free generators obey the bound like every other free vector
    units = [M.basis(i) for i in range(len(M)) if bound >= 1 or i in tors]
    free = M.free_indices
    size = 1
    for i in tors:
        size *= M.invariants[i]
    if size <= _FULL_ENUMERATION_LIMIT:
        ranges = [range(M.invariants[i]) if i in tors else range(1) for i in range(len(M))]
        torsion_elems = list(itertools.product(*ranges))
    else:
        torsion_elems = list(socle(M).generators)
    free_elems = []
    for vals in itertools.product(range(-bound, bound + 1), repeat=len(free)):
        v = [0] * len(M)
        for i, x in zip(free, vals):
            v[i] = x
        free_elems.append(tuple(v))
    free_elems.sort(key=lambda v: (max(map(abs, v)), v))
    seen = set()
    out = []
    for v in units + torsion_elems + free_elems:
        if any(v) and v not in seen:
            seen.add(v)
            out.append(v)
    return out


def complement(S: Submodule, M: FgModule, order_seed: Optional[int] = None,
               bound: int = 3) -> ComplementCertificate:
    """Greedy certified complement of ``S`` in ``M``.

    Candidates are the canonical generators, every element of the torsion
    part, and free vectors with coordinates in ``[-bound, bound]``.  A
    candidate ``x`` is accepted when ``S`` still meets ``C + <x>`` trivially;
    the search stops as soon as ``S + C`` is essential.  ``order_seed``
    shuffles the candidate order.
    """
    if S.ambient != M:
        raise AmbientMismatch("%s is not a submodule of %s" % (S, M))
    C = zero_submodule(M)
    if not is_essential(S, M):
        cands = _candidates(M, bound)
        if order_seed is not None:
            random.Random(order_seed).shuffle(cands)
        for x in cands:
            trial = C + span(M, [x])
            if intersect(S, trial).is_zero:
                C = trial
                if is_essential(S + C, M):
                    break
        else:
            raise SearchExhausted("no certified complement among candidates with bound %d" % bound)
    zero_meet = intersect(S, C).is_zero
    ess = is_essential(S + C, M)
    if not (zero_meet and ess):
        raise SearchExhausted("complement failed re-verification")
    return ComplementCertificate(C, zero_meet, ess)


def _step(di: int, dj: int) -> int:
    """Smallest admissible entry for a map from Z/dj into Z/di (0 means Z)."""
    if dj == 0 or di == 0:
        return 1
    return di // math.gcd(di, dj)


def _random_torsion_automorphism(M: FgModule, rng: random.Random) -> list[list[int]]:
    tors = M.torsion_indices
    inv = M.invariants
    k = len(M)
    for _ in range(200):
        mat = [[0] * k for _ in range(k)]
        for i in tors:
            for j in tors:
                if i == j:
                    mat[i][j] = rng.choice([u for u in range(1, inv[i]) if math.gcd(u, inv[i]) == 1])
                elif rng.random() < 0.5:
                    mat[i][j] = rng.randint(-3, 3) * _step(inv[i], inv[j])
        block = FgModule(M.ring, M.torsion_invariants)
        sub = IntMatrix([[mat[i][j] for j in tors] for i in tors], cols=len(tors))
        if Morphism(block, block, sub).is_injective():
            return mat
    return [[int(i == j and i in tors) for j in range(k)] for i in range(k)]


def random_essential_mono(M: FgModule, rng: random.Random) -> Morphism:
    """An injective endomorphism of ``M`` with essential image.

    Free coordinates are scaled by random nonzero integers (picking up random
    torsion components), the torsion part is moved by a random automorphism.
    """
    mat = _random_torsion_automorphism(M, rng)
    for j in M.free_indices:
        mat[j][j] = rng.choice([-3, -2, -1, 1, 2, 3, 4])
        for i in M.torsion_indices:
            mat[i][j] = rng.randint(0, M.invariants[i] - 1)
    f = Morphism(M, M, IntMatrix(mat, cols=len(M)))
    assert f.is_injective() and is_essential(f.image(), M)
    return f


def random_automorphism(M: FgModule, rng: random.Random) -> tuple[Morphism, Morphism]:
    """A random automorphism of ``M`` together with its inverse."""
    mat = _random_torsion_automorphism(M, rng)
    free = M.free_indices
    for j in free:
        mat[j][j] = rng.choice([-1, 1])
        for i in M.torsion_indices:
            mat[i][j] = rng.randint(0, M.invariants[i] - 1)
    for _ in range(2 * len(free)):
        a, b = rng.sample(free, 2) if len(free) > 1 else (None, None)
        if a is None:
            break
        c = rng.randint(-2, 2)
        for row in mat:
            row[a] += c * row[b]
    f = Morphism(M, M, IntMatrix(mat, cols=len(M)))
    g = lift(Morphism.identity(M), f)
    assert g is not None
    return f, g
