"""
Dimension and component computations for strata of standard determinantal schemes.

The package evaluates closed-form stratum dimensions from degree data,
builds Eagon-Northcott and Buchsbaum-Rim twist data and Hilbert
polynomials, computes degree-zero Hom and Ext groups on random instances
over a prime field, and turns those numbers into unobstructedness and
component verdicts.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .degree_data import DegreeSpec, SpecError, validate  # noqa: E402

__all__ = ["DegreeSpec", "SpecError", "validate", "__version__"]
