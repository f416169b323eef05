"""Cochain complexes and exactness predicates: exact, e-exact, F-exact.

Bounded complexes carry explicit zero padding.  A complex ``f^1, ..., f^m``
with ``leading_zero`` set is read as ``0 -> M^0 -> ... ``; predicates look at
every position that has both an incoming and an outgoing map after padding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInput, NotAComplex, NotComposable, NotSingular, RingMismatch
from .essentials import is_essential
from .intlat import IntMatrix
from .modcore import FgModule, Morphism, Submodule, preimage, quotient
from .torsion import GabrielTopology, is_F_torsion


def zero_module(M: FgModule) -> FgModule:
    return FgModule(M.ring, ())


@dataclass(frozen=True)
class CochainComplex:
    differentials: tuple
    leading_zero: bool = False
    trailing_zero: bool = False

    def __post_init__(self):
        diffs = tuple(self.differentials)
        object.__setattr__(self, "differentials", diffs)
        if not diffs:
            raise InvalidInput("a complex needs at least one differential")
        ring = diffs[0].source.ring
        for f in diffs:
            if f.source.ring != ring:
                raise RingMismatch("differentials over different rings")
        for i, (f, g) in enumerate(zip(diffs, diffs[1:])):
            if f.target != g.source:
                raise NotComposable("differential %d ends at %s but %d starts at %s"
                                    % (i, f.target, i + 1, g.source))
            if not (g @ f).is_zero:
                raise NotAComplex("composite of differentials %d and %d is nonzero" % (i, i + 1))

    @property
    def ring(self):
        return self.differentials[0].source.ring

    @property
    def modules(self) -> list[FgModule]:
        return [self.differentials[0].source] + [f.target for f in self.differentials]

    def padded(self) -> list[Morphism]:
        maps = list(self.differentials)
        if self.leading_zero:
            first = maps[0].source
            maps.insert(0, Morphism.zero(zero_module(first), first))
        if self.trailing_zero:
            last = maps[-1].target
            maps.append(Morphism.zero(last, zero_module(last)))
        return maps

    def interior(self) -> list[tuple[Morphism, Morphism]]:
        """(incoming, outgoing) pairs at every interior position."""
        maps = self.padded()
        return list(zip(maps, maps[1:]))

    def __len__(self):
        return len(self.differentials)


def make_complex(differentials: Sequence[Morphism], leading_zero: bool = False,
                 trailing_zero: bool = False) -> CochainComplex:
    return CochainComplex(tuple(differentials), leading_zero, trailing_zero)


def short_complex(f: Morphism, g: Morphism) -> CochainComplex:
    """``0 -> A -> B -> C -> 0``."""
    return CochainComplex((f, g), True, True)


def is_exact(c: CochainComplex) -> bool:
    return all(out.kernel().issubset(inc.image()) for inc, out in c.interior())


def is_e_exact(c: CochainComplex) -> bool:
    return all(is_essential(inc.image(), out.kernel()) for inc, out in c.interior())


def is_e_epi(f: Morphism) -> bool:
    return is_essential(f.image(), f.target)


def subquotient(K: Submodule, I: Submodule) -> FgModule:
    """The module ``K / I`` for submodules ``I <= K`` of a common ambient."""
    N, incl = K.as_module()
    return quotient(N, preimage(incl, I))[0]


def cohomology(c: CochainComplex) -> list[FgModule]:
    """Cohomology at each interior position, in order."""
    return [subquotient(out.kernel(), inc.image()) for inc, out in c.interior()]


def is_F_exact(c: CochainComplex, F: GabrielTopology) -> bool:
    if not c.ring.is_integers:
        raise RingMismatch("F-exactness is only defined over Z here")
    return all(is_F_torsion(F, H) for H in cohomology(c))


def essential_extension_of(C: FgModule) -> CochainComplex:
    """``0 -> A -> B -> C -> 0`` exact with ``A -> B`` an essential mono, for finite ``C``.

    With ``C = sum Z/n_i`` this is ``A = B = Z^k``, ``A -> B`` the diagonal
    map ``diag(n_i)`` and ``B -> C`` the coordinatewise projection.
    """
    if not C.ring.is_integers:
        raise RingMismatch("essential extensions are built over Z")
    if C.rank:
        raise NotSingular("%s has a free summand" % C)
    k = len(C)
    free = FgModule(C.ring, (0,) * k)
    f = Morphism(free, free, IntMatrix.diagonal(list(C.invariants)))
    g = Morphism(free, C, IntMatrix.identity(k))
    c = short_complex(f, g)
    assert is_exact(c) and is_essential(f.image(), free)
    return c
