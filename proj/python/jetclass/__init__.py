"""Python surface for the jetclass C++ core.

Every function accepts plain dicts (or JSON strings) and returns parsed
dicts; the heavy lifting happens in the compiled module.
"""

import json

try:
    from ._jetclass import (  # installed package layout
        JetclassError,
        __version__,
        bounds,
        bracket,
        centralizer,
        classify,
        codim,
        gk_point_bound,
        gk_sum_bound,
        multiplicity,
        resultant,
        scan,
    )
except ImportError:  # build-tree layout used by the test suite
    from _jetclass import (
        JetclassError,
        __version__,
        bounds,
        bracket,
        centralizer,
        classify,
        codim,
        gk_point_bound,
        gk_sum_bound,
        multiplicity,
        resultant,
        scan,
    )

__all__ = [
    "JetclassError",
    "__version__",
    "gk_point_bound",
    "gk_sum_bound",
    "classify_field",
    "centralizer_of",
    "multiplicity_of",
    "imaginary_resultant",
    "multiplicity_bounds",
    "stratum_codim",
    "lie_bracket",
    "scan_family",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def classify_field(field, order=0, tol_zero=1e-9, tol_nonzero=1e-6, tol_linear=1e-7):
    """Classify a planar germ; returns the report dict."""
    return json.loads(classify(_text(field), order, tol_zero, tol_nonzero, tol_linear))


def centralizer_of(field, order=0, restrict_vanishing=False):
    """Exact centralizer kernel; returns {dim, basis, ...}."""
    return json.loads(centralizer(_text(field), order, restrict_vanishing))


def multiplicity_of(field, cutoff=12):
    """Local multiplicity at the origin via Macaulay dual spaces."""
    return json.loads(multiplicity(_text(field), cutoff))


def imaginary_resultant(matrix):
    """R(A): resultant test for eigenvalues on the imaginary axis."""
    return json.loads(resultant(_text(matrix)))


def multiplicity_bounds(k):
    """Point and sum multiplicity bounds for generic k-parameter families."""
    return json.loads(bounds(k))


def stratum_codim(cls, k=0, order=0, samples=5, seed=0):
    """Codimension of a degeneracy class from seeded random normal forms."""
    return json.loads(codim(cls, k, order, samples, seed))


def lie_bracket(v, w, order):
    """[v, w] truncated to the given order; returns the field dict."""
    return json.loads(bracket(_text(v), _text(w), order))


def scan_family(family, nx=21, ny=21, **kwargs):
    """Grid scan of a two-parameter family; returns the full report dict."""
    return json.loads(scan(_text(family), nx, ny, **kwargs))
