"""Exact local calculus on super Riemann surfaces.

Grassmann arithmetic over the rationals, Berezinians of supermatrices, super
Laurent residues, superconformal coordinate changes and super Mumford form
coefficients.  Values cross the boundary as JSON strings in the same formats
the `smf` command line tool uses.
"""

from ._core import (
    alpha,
    berezinian,
    check_superconformal,
    d_theta,
    grassmann_invert,
    grassmann_multiply,
    left_inverse,
    mumford_ns,
    mumford_ramond,
    ns_rank,
    r_value,
    ramond_rank,
    residue,
    transform_section,
)

__all__ = [
    "alpha",
    "berezinian",
    "check_superconformal",
    "d_theta",
    "grassmann_invert",
    "grassmann_multiply",
    "left_inverse",
    "mumford_ns",
    "mumford_ramond",
    "ns_rank",
    "r_value",
    "ramond_rank",
    "residue",
    "transform_section",
]
