"""Exact verification toolkit for the McKay correspondence on the finite
subgroups of SL(2, C): McKay graphs and their affine ADE classification,
Molien series and the numerical Koszul criterion, height-function quivers,
BGP reflection functors, preprojective Hilbert series, and the lattice
action of spherical twists.  All arithmetic is exact; every check is an
integer or rational-function identity.
"""

__version__ = "0.1.0"

from .groups import GroupDescriptor, build_group, parse_descriptor  # noqa: E402
from .chartab import character_table, dixon_character_table  # noqa: E402
from .mckaygraph import classify_affine_ade, mckay_graph  # noqa: E402
from .molien import HomDims, koszul_check, molien_matrices  # noqa: E402
from .heights import HeightFunction, enumerate_heights  # noqa: E402

__all__ = [
    "GroupDescriptor", "build_group", "parse_descriptor",
    "character_table", "dixon_character_table",
    "classify_affine_ade", "mckay_graph",
    "HomDims", "koszul_check", "molien_matrices",
    "HeightFunction", "enumerate_heights",
    "__version__",
]
