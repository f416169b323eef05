"""Singular submodules, the radical Z_2, and Gabriel topologies on Z.

A Gabriel topology on Z is encoded by a set of primes: the ideal ``nZ`` is
open when ``n != 0`` and every prime factor of ``n`` lies in the set.  The
Goldie topology (all nonzero ideals) is the special value ``primes=None``.
Both kinds are perfect and stable; nothing here re-checks that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional

from .errors import InvalidInput, RingMismatch
from .essentials import is_essential
from .intlat import prime_factors
from .modcore import (
    FgModule,
    Morphism,
    Ring,
    Submodule,
    preimage,
    quotient,
    ring_module,
    span,
    whole,
)


@dataclass(frozen=True)
class GabrielTopology:
    primes: Optional[FrozenSet[int]] = None

    def __post_init__(self):
        if self.primes is not None:
            ps = frozenset(int(p) for p in self.primes)
            for p in ps:
                if p < 2 or prime_factors(p) != [p]:
                    raise InvalidInput("%r is not a prime" % p)
            object.__setattr__(self, "primes", ps)

    @classmethod
    def goldie(cls) -> "GabrielTopology":
        return cls(None)

    @classmethod
    def of_primes(cls, primes: Iterable[int]) -> "GabrielTopology":
        return cls(frozenset(primes))

    @property
    def is_goldie(self) -> bool:
        return self.primes is None

    def contains_ideal(self, n: int) -> bool:
        """Whether the ideal ``nZ`` belongs to the topology."""
        if n == 0:
            return False
        if self.primes is None:
            return True
        return all(p in self.primes for p in prime_factors(n))

    def p_part(self, n: int) -> int:
        """Largest divisor of ``n`` whose prime factors are all in the topology."""
        if self.primes is None:
            return abs(n)
        out = 1
        for p in prime_factors(n):
            if p in self.primes:
                while n % (out * p) == 0:
                    out *= p
        return out

    def label(self) -> str:
        if self.primes is None:
            return "all"
        if not self.primes:
            return "none"
        return ",".join(str(p) for p in sorted(self.primes))

    def __str__(self):
        return "F[%s]" % self.label()


GOLDIE = GabrielTopology.goldie()


def is_essential_ideal(ring: Ring, generator: int) -> bool:
    R = ring_module(ring)
    return is_essential(span(R, [(generator,)]), R)


def _annihilator_generator(ring: Ring, d: int, c: int) -> int:
    """Generator of Ann(c) in the ring, for c in Z/d."""
    a = d // math.gcd(c, d)
    return a if ring.is_integers else math.gcd(a, ring.modulus)


def singular_submodule(ring: Ring, M: FgModule) -> Submodule:
    if M.ring != ring:
        raise RingMismatch("module over %s, ring %s" % (M.ring, ring))
    if ring.is_integers:
        return span(M, [M.basis(i) for i in M.torsion_indices])
    # Z commutes with direct sums, so work one cyclic summand at a time
    gens = []
    for i, d in enumerate(M.invariants):
        for c in range(1, d):
            if is_essential_ideal(ring, _annihilator_generator(ring, d, c)):
                gens.append(tuple(c if j == i else 0 for j in range(len(M))))
    return span(M, gens)


def is_singular(M: FgModule) -> bool:
    return singular_submodule(M.ring, M) == whole(M)


def is_nonsingular(M: FgModule) -> bool:
    return singular_submodule(M.ring, M).is_zero


def z2(ring: Ring, M: FgModule) -> Submodule:
    """Preimage of Z(M/Z(M)) under the projection ``M -> M/Z(M)``."""
    Z = singular_submodule(ring, M)
    Q, proj = quotient(M, Z)
    return preimage(proj, singular_submodule(ring, Q))


def _require_integers(M: FgModule):
    if not M.ring.is_integers:
        raise RingMismatch("Gabriel topologies are only supported over Z, got %s" % M.ring)


def gabriel_torsion(F: GabrielTopology, M: FgModule) -> Submodule:
    _require_integers(M)
    gens = []
    for i, d in enumerate(M.invariants):
        if d == 0:
            continue
        a = F.p_part(d)
        if a > 1:
            gens.append(tuple(d // a if j == i else 0 for j in range(len(M))))
    return span(M, gens)


def is_F_torsion(F: GabrielTopology, M: FgModule) -> bool:
    _require_integers(M)
    return M.rank == 0 and all(F.p_part(d) == d for d in M.invariants)


def is_F_torsionfree(F: GabrielTopology, M: FgModule) -> bool:
    return gabriel_torsion(F, M).is_zero


def submodule_torsion(F: GabrielTopology, S: Submodule) -> Submodule:
    """``t_F(S)`` computed intrinsically on ``S`` and pushed into the ambient module."""
    N, incl = S.as_module()
    return Submodule(S.ambient, tuple(incl(g) for g in gabriel_torsion(F, N).generators))


def is_F_epi(F: GabrielTopology, f: Morphism) -> bool:
    """``f`` is F-epi when its cokernel is F-torsion."""
    return is_F_torsion(F, f.parts.cokernel)

