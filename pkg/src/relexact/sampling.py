"""Random desk-scale modules, morphisms, submodules and complexes.

Torsion invariant factors are drawn from {2, 3, 4, 8, 9}, free ranks stay at
most 2 and matrix entries lie in [-4, 4] (scaled so the map is well defined).
Everything takes an explicit ``random.Random`` so callers control seeding.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .essentials import _step, is_essential, random_essential_mono
from .exactness import CochainComplex
from .intlat import IntMatrix
from .modcore import (
    ZZ,
    FgModule,
    Morphism,
    Ring,
    Submodule,
    direct_sum,
    module,
    preimage,
    quotient,
    span,
)

TORSION_FACTORS = (2, 3, 4, 8, 9)


def random_module(rng: random.Random, max_rank: int = 2, max_torsion: int = 2,
                  max_order: int = 64, torsion_free: bool = False,
                  ring: Ring = ZZ) -> FgModule:
    if ring.modulus is not None:
        return random_zmod_module(rng, ring.modulus, max_torsion + 1)
    rank = rng.randint(0, max_rank)
    tors = []
    if not torsion_free:
        for _ in range(rng.randint(0, max_torsion)):
            d = rng.choice(TORSION_FACTORS)
            if math.prod(tors) * d <= max_order:
                tors.append(d)
    return module(*tors, *([0] * rank))


def random_zmod_module(rng: random.Random, n: int, max_summands: int = 3) -> FgModule:
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    return module(*(rng.choice(divisors) for _ in range(rng.randint(0, max_summands))),
                  ring=Ring(n))


def random_morphism(M: FgModule, N: FgModule, rng: random.Random, bound: int = 4) -> Morphism:
    rows = []
    for di in N.invariants:
        row = []
        for dj in M.invariants:
            if dj and not di:
                row.append(0)
            else:
                row.append(rng.randint(-bound, bound) * _step(di, dj))
        rows.append(row)
    return Morphism(M, N, IntMatrix(rows, cols=len(M)))


def random_element(M: FgModule, rng: random.Random, bound: int = 4) -> tuple:
    return M.reduce([rng.randint(-bound, bound) if d == 0 else rng.randrange(d)
                     for d in M.invariants])


def random_submodule(M: FgModule, rng: random.Random, max_gens: int = 2) -> Submodule:
    return span(M, [random_element(M, rng) for _ in range(rng.randint(0, max_gens))])


def essential_overmodule(I: Submodule, rng: random.Random) -> Submodule:
    """A random ``K >= I`` with ``I`` essential in ``K`` (possibly ``I`` itself).

    Candidates are preimages of random torsion submodules of ``M/I``; one that
    is not an essential extension falls back to ``I``.
    """
    M = I.ambient
    Q, q = quotient(M, I)
    gens = [random_element(Q, rng) for _ in range(rng.randint(1, 2))]
    tors = span(Q, [tuple(x if d else 0 for x, d in zip(g, Q.invariants)) for g in gens])
    K = preimage(q, tors)
    return K if is_essential(I, K) else I


def map_with_kernel(K: Submodule, rng: random.Random, extra: Optional[FgModule] = None,
                    essentialize: bool = True) -> Morphism:
    """A morphism out of ``K.ambient`` whose kernel is exactly ``K``.

    The quotient by ``K`` is embedded as the first summand of ``Q + extra``,
    then moved by a random essential mono of that sum.
    """
    Q, q = quotient(K.ambient, K)
    if extra is not None and not extra.is_zero:
        ds = direct_sum(Q, extra)
        f = ds.injections[0] @ q
    else:
        f = q
    if essentialize:
        f = random_essential_mono(f.target, rng) @ f
    return f


def random_complex(rng: random.Random, length: int = 2, max_rank: int = 2) -> CochainComplex:
    """A random cochain complex mixing exact, e-exact and non-e-exact positions."""
    M = random_module(rng, max_rank=max_rank)
    maps = []
    I = span(M, [])
    padding = rng.random() < 0.3
    for i in range(length):
        mode = rng.random()
        if i == 0 and not padding:
            K = random_submodule(M, rng)
        elif mode < 0.35:
            K = I
        elif mode < 0.7:
            K = essential_overmodule(I, rng)
        else:
            K = I + random_submodule(M, rng, 1)
        extra = random_module(rng, max_rank=1, max_torsion=1) if rng.random() < 0.5 else None
        f = map_with_kernel(K, rng, extra)
        maps.append(f)
        I = f.image()
        M = f.target
    return CochainComplex(tuple(maps), padding, padding and rng.random() < 0.5)
