"""Localization of Z-modules at a Gabriel topology.

For the Goldie topology this is tensoring with Q; for the topology of a prime
set P it is tensoring with Z[1/P].  Both kill exactly the torsion of the
topology.  A localized module is kept as an invariant list, and every
computation runs on its integer model ``Z^r + sum Z/d'`` where each ``d'`` is
prime to P: the model tensored with the localized ring is the localized
module, and the model has no P-torsion left.  So a model module localizes to
zero exactly when all its invariant factors are P-units.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, RingMismatch
from .exactness import CochainComplex, subquotient
from .intlat import IntMatrix, snf
from .modcore import ZZ, FgModule, Morphism
from .torsion import GabrielTopology


def _require_integers(M: FgModule):
    if not M.ring.is_integers:
        raise RingMismatch("localization is only supported over Z, got %s" % M.ring)


def _surviving(M: FgModule, F: GabrielTopology) -> list[tuple[int, int]]:
    """``(coordinate, d')`` for each coordinate of M that survives localization."""
    out = []
    for i, d in enumerate(M.invariants):
        if d == 0:
            out.append((i, 0))
        elif not F.is_goldie:
            rest = d // F.p_part(d)
            if rest > 1:
                out.append((i, rest))
    return out


def _is_unit(F: GabrielTopology, d: int) -> bool:
    return F.contains_ideal(d)


@dataclass(frozen=True)
class LocalizedModule:
    topology: GabrielTopology
    invariants: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def is_zero(self) -> bool:
        return not self.invariants

    def model(self) -> FgModule:
        return FgModule(ZZ, self.invariants)

    def __str__(self):
        if not self.invariants:
            return "0"
        ring = "Q" if self.topology.is_goldie else "Z[1/%s]" % self.topology.label()
        if not self.topology.is_goldie and not self.topology.primes:
            ring = "Z"
        return " + ".join(ring if d == 0 else "Z/%d" % d for d in self.invariants)


@dataclass(frozen=True)
class LocalizedMorphism:
    """Matrix on surviving coordinates.

    Localizing an integer matrix needs no denominators, so entries stay
    integers (reduced modulo the target's torsion orders).
    """

    source: LocalizedModule
    target: LocalizedModule
    matrix: IntMatrix

    def model(self) -> Morphism:
        return Morphism(self.source.model(), self.target.model(), self.matrix)

    def __matmul__(self, other: "LocalizedMorphism") -> "LocalizedMorphism":
        if other.target != self.source:
            raise DimensionMismatch("cannot compose localized morphisms")
        return LocalizedMorphism(other.source, self.target,
                                 (self.model() @ other.model()).matrix)

    def is_surjective(self) -> bool:
        F = self.target.topology
        m = len(self.target.invariants)
        pres = self.matrix.hstack(IntMatrix.diagonal(list(self.target.invariants)))
        diag = snf(pres).diagonal
        diag += [0] * (m - len(diag))
        return all(_is_unit(F, d) for d in diag[:m])

    def is_injective(self) -> bool:
        # the model source has no torsion of the topology, so a kernel that
        # dies after localization is already zero
        return self.model().is_injective()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    @property
    def is_zero(self) -> bool:
        return self.model().is_zero


def localize_module(M: FgModule, F: GabrielTopology) -> LocalizedModule:
    _require_integers(M)
    return LocalizedModule(F, tuple(d for _, d in _surviving(M, F)))


def canonical_map(M: FgModule, F: GabrielTopology) -> Morphism:
    """``M -> M_F`` on integer models: keep surviving coordinates, reduce mod d'."""
    surv = _surviving(M, F)
    L = localize_module(M, F)
    rows = [[int(j == i) for j in range(len(M))] for i, _ in surv]
    return Morphism(M, L.model(), IntMatrix(rows, cols=len(M)))


def localize_morphism(f: Morphism, F: GabrielTopology) -> LocalizedMorphism:
    _require_integers(f.source)
    src, tgt = _surviving(f.source, F), _surviving(f.target, F)
    rows = [[f.matrix[i, j] for j, _ in src] for i, _ in tgt]
    mat = IntMatrix(rows, cols=len(src))
    S, T = localize_module(f.source, F), localize_module(f.target, F)
    return LocalizedMorphism(S, T, Morphism(S.model(), T.model(), mat).matrix)


def is_loc_surjective(f: Morphism, F: GabrielTopology) -> bool:
    return localize_morphism(f, F).is_surjective()


def _rank(A: IntMatrix) -> int:
    return snf(A).rank


def is_loc_exact(c: CochainComplex, F: GabrielTopology) -> bool:
    if not c.ring.is_integers:
        raise RingMismatch("localization is only supported over Z, got %s" % c.ring)
    for inc, out in c.interior():
        li, lo = localize_morphism(inc, F), localize_morphism(out, F)
        if F.is_goldie:
            # vector spaces over Q: exact iff rank in + rank out = dimension
            if _rank(li.matrix) + _rank(lo.matrix) != len(li.target.invariants):
                return False
        else:
            mi, mo = li.model(), lo.model()
            H = subquotient(mo.kernel(), mi.image())
            if not all(_is_unit(F, d) for d in H.invariants):
                return False
    return True
