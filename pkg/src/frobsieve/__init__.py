"""frobsieve: exact-arithmetic certification of maximal Galois image from
Frobenius characteristic-polynomial data.

The package takes a finite list of degree-4 Frobenius characteristic
polynomials with coefficients in Z[zeta] (zeta a cube root of unity),
checks the seven explicit large-image conditions, and runs a seven-step
sieve that bounds the set of exceptional primes by exact resultant and
divisibility computations.
"""

__version__ = "0.1.0"

from .conditions import ConditionsReport, check_all
from .dirichlet import DirichletCharacter, enumerate_cubic, enumerate_quadratic, evaluate, kronecker
from .eisenstein import EisensteinInt, PrimeType, classify_prime, conj, divides_above, mul, norm
from .frobdata import Dataset, FrobeniusRecord, charpoly, exterior_square, load_dataset, scholten_dataset
from .polyarith import Domain, RootRefinementError, UniPoly, complex_roots, resultant, resultant_with_binomial
from .residual import phase_b_scan
from .sieve import ImageLabel, SieveConfig, SieveReport, expected_image, is_excluded, run_sieve

__all__ = [
    "EisensteinInt",
    "PrimeType",
    "classify_prime",
    "conj",
    "divides_above",
    "mul",
    "norm",
    "Domain",
    "RootRefinementError",
    "UniPoly",
    "complex_roots",
    "resultant",
    "resultant_with_binomial",
    "Dataset",
    "FrobeniusRecord",
    "charpoly",
    "exterior_square",
    "load_dataset",
    "scholten_dataset",
    "DirichletCharacter",
    "enumerate_cubic",
    "enumerate_quadratic",
    "evaluate",
    "kronecker",
    "ConditionsReport",
    "check_all",
    "ImageLabel",
    "SieveConfig",
    "SieveReport",
    "expected_image",
    "is_excluded",
    "run_sieve",
    "phase_b_scan",
    "__version__",
]
