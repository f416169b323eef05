"""Computable shadows of the canonical functor into the spectral category.

In the spectral category every module becomes isomorphic to its injective
envelope.  For a finitely generated abelian group that envelope is a sum of
copies of Q (one per free summand) and of Prüfer groups Z(p^oo) (one per
cyclic summand of order divisible by p), so a pair ``(rank, {p: mult})``
identifies the object up to isomorphism.  Modules over Z/n are treated as
their underlying abelian groups.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .essentials import complement, is_essential
from .exactness import CochainComplex
from .intlat import prime_factors
from .modcore import FgModule, Morphism, Submodule, image_of


@dataclass(frozen=True)
class SpectralObject:
    rank: int = 0
    local: tuple = ()  # sorted ((p, multiplicity), ...)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.local

    def __add__(self, other: "SpectralObject") -> "SpectralObject":
        c = Counter(dict(self.local))
        c.update(dict(other.local))
        return SpectralObject(self.rank + other.rank, tuple(sorted(c.items())))

    def as_dict(self) -> dict:
        return {"rank": self.rank, "local": {str(p): m for p, m in self.local}}

    def __str__(self):
        parts = ["Q^%d" % self.rank] if self.rank else []
        parts += ["Z(%d^oo)^%d" % (p, m) for p, m in self.local]
        return " + ".join(parts) or "0"


def spectral_invariant(M: Union[FgModule, Submodule]) -> SpectralObject:
    if isinstance(M, Submodule):
        M = M.as_module()[0]
    counts = Counter()
    for d in M.torsion_invariants:
        counts.update(prime_factors(d))
    return SpectralObject(M.rank, tuple(sorted(counts.items())))


class SpecParts(NamedTuple):
    kernel: SpectralObject
    image: SpectralObject
    cokernel: SpectralObject
    kernel_complement: Submodule
    cokernel_complement: Submodule


def spec_parts(f: Morphism, order_seed: Optional[int] = None, bound: int = 3) -> SpecParts:
    """Kernel, image and cokernel of ``f`` after passing to the spectral category.

    ``C`` is a complement of ``ker f`` in the source, the image is ``f(C)``
    and the cokernel is a complement ``D`` of ``f(C)`` in the target.
    """
    ker = f.kernel()
    C = complement(ker, f.source, order_seed, bound).complement
    fC = image_of(f, C)
    D = complement(fC, f.target, order_seed, bound).complement
    return SpecParts(spectral_invariant(ker), spectral_invariant(fC),
                     spectral_invariant(D), C, D)


def is_spec_exact(c: CochainComplex, order_seed: Optional[int] = None, bound: int = 3) -> bool:
    """Exactness of the complex after applying the functor into the spectral category.

    At each interior position: pick a complement ``C`` of the kernel of the
    incoming map, and require its image to be essential in the kernel of the
    outgoing map.
    """
    for inc, out in c.interior():
        C = complement(inc.kernel(), inc.source, order_seed, bound).complement
        if not is_essential(image_of(inc, C), out.kernel()):
            return False
    return True
