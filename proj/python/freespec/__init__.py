"""Free spectrahedra: membership, extreme points and dilation decompositions."""

from ._core import *  # noqa: F401,F403
from ._core import MatrixTuple


def point(values):
    """Level-1 tuple from real scalars."""
    import numpy as np

    return MatrixTuple([np.array([[float(v)]]) for v in values])
