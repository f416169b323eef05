"""Finitely generated modules over Z and Z/n in invariant-factor form.

A module is stored as ``Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...`` (each
``>= 2``) followed by zeros for free summands.  Elements are plain integer
tuples in these coordinates, torsion coordinates reduced into ``[0, d_i)``.
Modules over Z/n are handled as abelian groups killed by n; only the
torsion-theoretic code looks at the ring.

Matrices follow the column convention: relations are columns, and a morphism
matrix has one column per source generator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    ForeignElement,
    IllDefined,
    InvalidInput,
    RingMismatch,
)
from .intlat import IntMatrix, kernel_basis, snf, solve_linear

Element = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    """Either the integers (``modulus is None``) or Z/n with n >= 2."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise InvalidInput("Z/n needs n >= 2, got %r" % self.modulus)

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def __str__(self):
        return "Z" if self.modulus is None else "Z/%d" % self.modulus

    def __repr__(self):
        return "Ring(%s)" % self


ZZ = Ring()


def Zmod(n: int) -> Ring:
    return Ring(n)


@dataclass(frozen=True)
class FgModule:
    ring: Ring
    invariants: tuple[int, ...]

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        object.__setattr__(self, "invariants", inv)
        nonzero = [d for d in inv if d]
        if any(d < 0 for d in inv):
            raise InvalidInput("negative invariant factor in %r" % (inv,))
        if any(d == 1 for d in inv):
            raise InvalidInput("unit invariant factor in %r" % (inv,))
        if inv[: len(nonzero)] != tuple(nonzero):
            raise InvalidInput("free summands must come last: %r" % (inv,))
        if any(b % a for a, b in zip(nonzero, nonzero[1:])):
            raise InvalidInput("invariant factors must form a divisibility chain: %r" % (inv,))
        n = self.ring.modulus
        if n is not None and (len(nonzero) != len(inv) or any(n % d for d in inv)):
            raise InvalidInput("over %s every invariant must divide %d: %r" % (self.ring, n, inv))

    def __len__(self):
        return len(self.invariants)

    def __repr__(self):
        return "FgModule(%s, %r)" % (self.ring, list(self.invariants))

    def __str__(self):
        if not self.invariants:
            return "0"
        return " + ".join("Z" if d == 0 else "Z/%d" % d for d in self.invariants)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion_invariants(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d)

    @property
    def torsion_indices(self) -> list[int]:
        return [i for i, d in enumerate(self.invariants) if d]

    @property
    def free_indices(self) -> list[int]:
        return [i for i, d in enumerate(self.invariants) if d == 0]

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_zero(self) -> bool:
        return not self.invariants

    @property
    def order(self) -> Optional[int]:
        """Cardinality, or None for infinite modules."""
        return math.prod(self.invariants) if self.is_finite else None

    def relation_matrix(self) -> IntMatrix:
        cols = [[d if i == j else 0 for i in range(len(self))]
                for j, d in enumerate(self.invariants) if d]
        return IntMatrix.from_columns(cols, len(self))

    def reduce(self, coords: Sequence[int]) -> Element:
        if len(coords) != len(self):
            raise ForeignElement("element of length %d in module with %d generators"
                                 % (len(coords), len(self)))
        return tuple(x % d if d else int(x) for x, d in zip(coords, self.invariants))

    def zero(self) -> Element:
        return (0,) * len(self)

    def basis(self, i: int) -> Element:
        return tuple(int(i == j) for j in range(len(self)))

    def elements(self) -> Iterator[Element]:
        if not self.is_finite:
            raise InvalidInput("cannot enumerate an infinite module")
        return itertools.product(*(range(d) for d in self.invariants))

    def element_order(self, x: Sequence[int]) -> int:
        """Additive order of ``x``; 0 means infinite order."""
        x = self.reduce(x)
        if any(x[i] for i in self.free_indices):
            return 0
        return math.lcm(1, *(d // math.gcd(v, d) for v, d in zip(x, self.invariants) if d))


class Presentation(NamedTuple):
    """A canonical module together with the change of basis from a presentation.

    ``to_canonical`` sends presentation generators to canonical coordinates;
    ``from_canonical`` sends canonical generators back to (representatives in)
    the free module on the presentation generators.
    """

    module: FgModule
    to_canonical: IntMatrix
    from_canonical: IntMatrix


def present(ring: Ring, generators: int, relations: IntMatrix) -> Presentation:
    if relations.rows != generators:
        raise DimensionMismatch("relation matrix has %d rows for %d generators"
                                % (relations.rows, generators))
    if ring.modulus is not None:
        relations = IntMatrix.diagonal([ring.modulus] * generators).hstack(relations)
    dec = snf(relations)
    diag = dec.diagonal + [0] * (generators - len(dec.diagonal))
    keep = [i for i, d in enumerate(diag) if d != 1]
    module = FgModule(ring, tuple(diag[i] for i in keep))
    to_can = IntMatrix([[x % diag[i] if diag[i] else x for x in dec.U.data[i]] for i in keep],
                       cols=generators)
    from_can = IntMatrix.from_columns([dec.U_inv.column(i) for i in keep], generators)
    return Presentation(module, to_can, from_can)


def canonical_form(ring: Ring, generators: int, relations: IntMatrix) -> FgModule:
    return present(ring, generators, relations).module


def module(*invariants: int, ring: Ring = ZZ) -> FgModule:
    """Canonical module isomorphic to the direct sum of cyclic groups ``Z/d``."""
    return canonical_form(ring, len(invariants), IntMatrix.diagonal(list(invariants)))


def ring_module(ring: Ring) -> FgModule:
    """The ring as a module over itself."""
    return FgModule(ring, (0,) if ring.is_integers else (ring.modulus,))


@dataclass(frozen=True)
class Morphism:
    """A homomorphism between canonical modules, validated on construction."""

    source: FgModule
    target: FgModule
    matrix: IntMatrix

    def __post_init__(self):
        src, tgt = self.source, self.target
        if src.ring != tgt.ring:
            raise RingMismatch("morphism between modules over %s and %s" % (src.ring, tgt.ring))
        mat = self.matrix if isinstance(self.matrix, IntMatrix) else IntMatrix(self.matrix, cols=len(src))
        if mat.shape != (len(tgt), len(src)):
            raise DimensionMismatch("matrix is %dx%d, expected %dx%d"
                                    % (*mat.shape, len(tgt), len(src)))
        for j, dj in enumerate(src.invariants):
            if not dj:
                continue
            for i, ei in enumerate(tgt.invariants):
                a = mat[i, j]
                if (ei == 0 and a != 0) or (ei and (dj * a) % ei):
                    raise IllDefined("generator %d of order %d maps to an element of the wrong order"
                                     % (j, dj))
        reduced = IntMatrix([[a % e if e else a for a in row]
                             for row, e in zip(mat.data, tgt.invariants)], cols=len(src))
        object.__setattr__(self, "matrix", reduced)

    def __repr__(self):
        return "Morphism(%r -> %r, %r)" % (self.source, self.target, self.matrix.tolist())

    @classmethod
    def identity(cls, M: FgModule) -> "Morphism":
        return cls(M, M, IntMatrix.identity(len(M)))

    @classmethod
    def zero(cls, M: FgModule, N: FgModule) -> "Morphism":
        return cls(M, N, IntMatrix.zeros(len(N), len(M)))

    def __call__(self, x: Sequence[int]) -> Element:
        return self.target.reduce(self.matrix.apply(self.source.reduce(x)))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition: ``(g @ f)(x) == g(f(x))``."""
        if other.target != self.source:
            raise DimensionMismatch("cannot compose: %s is not %s" % (other.target, self.source))
        return Morphism(other.source, self.target, self.matrix @ other.matrix)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for row in self.matrix.data for a in row)

    @cached_property
    def parts(self) -> "HomParts":
        return hom_parts(self)

    def kernel(self) -> "Submodule":
        return self.parts.kernel

    def image(self) -> "Submodule":
        return self.parts.image

    def is_injective(self) -> bool:
        return self.kernel().is_zero

    def is_surjective(self) -> bool:
        return self.parts.cokernel.is_zero


def make_morphism(source: FgModule, target: FgModule, matrix) -> Morphism:
    return Morphism(source, target, matrix if isinstance(matrix, IntMatrix)
                    else IntMatrix(matrix, cols=len(source)))


def _projected_kernel(blocks: Sequence[IntMatrix], rows: int, keep: int) -> list[list[int]]:
    """Integer kernel of the horizontal block matrix, projected to its first ``keep`` columns."""
    big = IntMatrix.zeros(rows, 0).hstack(*blocks)
    return [v[:keep] for v in kernel_basis(big)]


@dataclass(frozen=True, eq=False)
class Submodule:
    """A subobject of ``ambient`` given by generators; equality is extensional."""

    ambient: FgModule
    generators: tuple = field(default=())

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = self.ambient.reduce(g)
            if any(g) and g not in gens:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    def gen_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.generators, len(self.ambient))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, x: Sequence[int]) -> bool:
        x = self.ambient.reduce(x)
        if not any(x):
            return True
        A = self.gen_matrix().hstack(self.ambient.relation_matrix())
        return solve_linear(A, list(x)) is not None

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def _check_same(self, other: "Submodule"):
        if self.ambient != other.ambient:
            raise AmbientMismatch("submodules of %s and %s" % (self.ambient, other.ambient))

    def issubset(self, other: "Submodule") -> bool:
        self._check_same(other)
        return all(other.contains(g) for g in self.generators)

    def __le__(self, other: "Submodule") -> bool:
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ambient == other.ambient and self.issubset(other) and other.issubset(self)

    __hash__ = None

    def __add__(self, other: "Submodule") -> "Submodule":
        self._check_same(other)
        return Submodule(self.ambient, self.generators + other.generators)

    @cached_property
    def rank(self) -> int:
        free = self.ambient.free_indices
        if not free or not self.generators:
            return 0
        rows = [[g[i] for g in self.generators] for i in free]
        return snf(IntMatrix(rows, cols=len(self.generators))).rank

    @cached_property
    def _presentation(self) -> tuple[FgModule, "Morphism"]:
        g = len(self.generators)
        k = len(self.ambient)
        rel = _projected_kernel([self.gen_matrix(), self.ambient.relation_matrix()], k, g)
        pres = present(self.ambient.ring, g, IntMatrix.from_columns(rel, g))
        incl = self.gen_matrix() @ pres.from_canonical
        return pres.module, Morphism(pres.module, self.ambient, incl)

    def as_module(self) -> tuple[FgModule, "Morphism"]:
        """The submodule as an abstract canonical module with its inclusion map."""
        return self._presentation

    def elements(self) -> set:
        """All elements (finite ambient only); used by brute-force checks."""
        seen = {self.ambient.zero()}
        frontier = [self.ambient.zero()]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = self.ambient.reduce([a + b for a, b in zip(x, g)])
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def __repr__(self):
        return "Submodule(%s, %r)" % (self.ambient, list(self.generators))


def span(ambient: FgModule, gens: Sequence[Sequence[int]]) -> Submodule:
    return Submodule(ambient, tuple(gens))


def whole(M: FgModule) -> Submodule:
    return Submodule(M, tuple(M.basis(i) for i in range(len(M))))


def zero_submodule(M: FgModule) -> Submodule:
    return Submodule(M, ())


def intersect(S: Submodule, T: Submodule) -> Submodule:
    S._check_same(T)
    if S.is_zero or T.is_zero:
        return zero_submodule(S.ambient)
    M = S.ambient
    neg_T = IntMatrix([[-a for a in row] for row in T.gen_matrix().data], cols=len(T.generators))
    coeffs = _projected_kernel([S.gen_matrix(), neg_T, M.relation_matrix()], len(M), len(S.generators))
    G = S.gen_matrix()
    return Submodule(M, tuple(G.apply(c) for c in coeffs))


def quotient(ambient: FgModule, S: Submodule) -> tuple[FgModule, Morphism]:
    if S.ambient != ambient:
        raise AmbientMismatch("submodule of %s, not of %s" % (S.ambient, ambient))
    rel = S.gen_matrix().hstack(ambient.relation_matrix())
    pres = present(ambient.ring, len(ambient), rel)
    return pres.module, Morphism(ambient, pres.module, pres.to_canonical)


class DirectSum(NamedTuple):
    module: FgModule
    injections: tuple[Morphism, Morphism]
    projections: tuple[Morphism, Morphism]


def direct_sum(M: FgModule, N: FgModule) -> DirectSum:
    if M.ring != N.ring:
        raise RingMismatch("direct sum of modules over %s and %s" % (M.ring, N.ring))
    k, l = len(M), len(N)
    pres = present(M.ring, k + l, IntMatrix.diagonal(list(M.invariants + N.invariants)))
    S = pres.module
    P, Q = pres.to_canonical, pres.from_canonical
    i1 = Morphism(M, S, IntMatrix([row[:k] for row in P.data], cols=k))
    i2 = Morphism(N, S, IntMatrix([row[k:] for row in P.data], cols=l))
    p1 = Morphism(S, M, IntMatrix(Q.data[:k], cols=len(S)))
    p2 = Morphism(S, N, IntMatrix(Q.data[k:], cols=len(S)))
    return DirectSum(S, (i1, i2), (p1, p2))


class HomParts(NamedTuple):
    kernel: Submodule
    image: Submodule
    cokernel: FgModule
    projection: Morphism


def hom_parts(f: Morphism) -> HomParts:
    M, N = f.source, f.target
    ker = _projected_kernel([f.matrix, N.relation_matrix()], len(N), len(M))
    kernel = Submodule(M, tuple(ker))
    image = Submodule(N, tuple(f.matrix.columns()))
    coker, proj = quotient(N, image)
    return HomParts(kernel, image, coker, proj)


def image_of(f: Morphism, S: Submodule) -> Submodule:
    """``f(S)`` as a submodule of the target."""
    if S.ambient != f.source:
        raise AmbientMismatch("submodule is not inside the source of f")
    return Submodule(f.target, tuple(f(g) for g in S.generators))


def preimage(f: Morphism, T: Submodule) -> Submodule:
    """``{x : f(x) in T}`` as a submodule of the source."""
    if T.ambient != f.target:
        raise AmbientMismatch("submodule is not inside the target of f")
    N = f.target
    neg_T = IntMatrix([[-a for a in row] for row in T.gen_matrix().data], cols=len(T.generators))
    sols = _projected_kernel([f.matrix, neg_T, N.relation_matrix()], len(N), len(f.source))
    return Submodule(f.source, tuple(sols))


def lift(h: Morphism, t: Morphism) -> Optional[Morphism]:
    """Some ``phi`` with ``t @ phi == h``, or None if ``h`` does not factor through ``t``."""
    if h.target != t.target:
        raise AmbientMismatch("lift needs a common target")
    X, Y, Z = h.source, t.source, t.target
    cols = []
    for j, dj in enumerate(X.invariants):
        b = list(h.matrix.column(j))
        # unknowns: y (len Y), slack for Z relations, slack for Y relations
        top = t.matrix.hstack(Z.relation_matrix(), IntMatrix.zeros(len(Z), len(Y.torsion_invariants)))
        if dj:
            bottom = IntMatrix.diagonal([dj] * len(Y)).hstack(
                IntMatrix.zeros(len(Y), len(Z.torsion_invariants)), Y.relation_matrix())
            A = IntMatrix(top.data + bottom.data, cols=top.cols)
            rhs = b + [0] * len(Y)
        else:
            A, rhs = top, b
        sol = solve_linear(A, rhs)
        if sol is None:
            return None
        cols.append(sol[: len(Y)])
    phi = Morphism(X, Y, IntMatrix.from_columns(cols, len(Y)))
    assert (t @ phi).matrix == h.matrix
    return phi


def same_morphism(f: Morphism, g: Morphism) -> bool:
    return f.source == g.source and f.target == g.target and f.matrix == g.matrix
