"""Graph star products of polynomial Poisson structures.

Inputs and outputs use the same text formats as the ``kstar`` command-line tool.
"""

from ._kstar import (
    gerstenhaber,
    graph_count,
    graphs,
    hkr,
    hochschild_d,
    is_poisson,
    mzv,
    schouten,
    star,
    star_series,
    verify,
    wedge_integral,
    weight_exact,
    weight_mc,
)

__all__ = [
    "gerstenhaber",
    "graph_count",
    "graphs",
    "hkr",
    "hochschild_d",
    "is_poisson",
    "mzv",
    "schouten",
    "star",
    "star_series",
    "verify",
    "wedge_integral",
    "weight_exact",
    "weight_mc",
]
