"""Relative exactness for finitely generated modules over Z and Z/n.

Essential submodules and complements, singular and Gabriel torsion, e-exact
and F-exact complexes, localization, spectral invariants, and a randomized
harness for homological lemmas.
"""

from .errors import (
    GenerationExhausted,
    IllDefined,
    InvalidInput,
    NotAComplex,
    RelexactError,
    SearchExhausted,
)
from .essentials import complement, is_essential, random_essential_mono, socle
from .exactness import (
    CochainComplex,
    cohomology,
    essential_extension_of,
    is_e_epi,
    is_e_exact,
    is_exact,
    is_F_exact,
    make_complex,
    short_complex,
)
from .intlat import IntMatrix, snf, solve_linear
from .localize import is_loc_exact, is_loc_surjective, localize_module, localize_morphism
from .modcore import (
    ZZ,
    FgModule,
    Morphism,
    Submodule,
    Zmod,
    canonical_form,
    make_morphism,
    module,
    present,
    span,
)
from .spectral import SpectralObject, is_spec_exact, spec_parts, spectral_invariant
from .torsion import (
    GOLDIE,
    GabrielTopology,
    gabriel_torsion,
    is_F_epi,
    is_nonsingular,
    is_singular,
    singular_submodule,
    z2,
)

__version__ = "0.1.0"
