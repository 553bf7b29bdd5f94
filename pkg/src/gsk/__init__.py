"""Signal-analysis groups of the (1+1)-affine Galilei family and their transforms.

Submodules: ``groups`` and ``embeddings`` (laws, matrices, atlas), ``cocycles``
(exponents and central extensions), ``dual_orbits``, ``representations``
(induced representations on Gaussian-exponential vectors), ``transforms``
(CWT, STFT, Stockwell, shearlet), ``verify`` and ``cli``.
"""

from .errors import GSKError
from .groups import GroupDescriptor, GroupElement, compose, get_group, inverse, to_matrix

__version__ = "0.1.0"

__all__ = ["GSKError", "GroupDescriptor", "GroupElement", "compose", "get_group", "inverse",
           "to_matrix", "__version__"]
