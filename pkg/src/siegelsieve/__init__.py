"""Exceptional-prime sieve and maximal-image certificates for genus-2 Siegel eigenform data."""

from .config import DP_FACTORIZATION, DP_PRINTED, Config
from .dataset import Dataset, load_dataset, parse_dataset, render_dataset
from .sieve import ExceptionalReport, run_sieve
from .spinor import EigenformData, HeckePolynomial

__version__ = "0.1.0"

__all__ = [
    "Config",
    "DP_FACTORIZATION",
    "DP_PRINTED",
    "Dataset",
    "load_dataset",
    "parse_dataset",
    "render_dataset",
    "ExceptionalReport",
    "run_sieve",
    "EigenformData",
    "HeckePolynomial",
    "__version__",
]
