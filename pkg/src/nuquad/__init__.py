"""nuquad: which uniform analytic quotients an imaginary quadratic field
admits, decided through the bilinear form on its 2-torsion Kummer radical.

Subpackages follow the pipeline: arith (symbols, factoring), gf2core
(bit-packed GF(2) linear algebra), forms (isotropy index), quadfield
(per-field dossiers), classgroup (independent class-group oracle),
density (limit densities and reported constants), survey (range drivers).
"""

from .arith import Factorization, factor, is_prime, kronecker, legendre, p_star
from .forms import BilinearForm, NuBounds, nu_bounds, nu_brute, nu_exact
from .gf2core import BitMatrix, congruence, kernel_basis, rank
from .quadfield import FieldRecord, build_field
from .survey import run_survey, squarefree_radicands

__version__ = "0.1.0"

__all__ = [
    "BilinearForm", "BitMatrix", "Factorization", "FieldRecord", "NuBounds",
    "build_field", "congruence", "factor", "is_prime", "kernel_basis",
    "kronecker", "legendre", "nu_bounds", "nu_brute", "nu_exact", "p_star",
    "rank", "run_survey", "squarefree_radicands", "__version__",
]
