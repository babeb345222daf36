"""poscode: four 2D position-coding patterns with encoders, decoders,
bit-exact PBM I/O, and an exhaustive window-uniqueness verifier.

Any sufficiently large window cut from one of these patterns can be
mapped back to absolute coordinates:

* ``rasnik``: 9x11-pixel coordinate blocks under a checkerboard overlay,
  decodable at any pixel alignment;
* ``anoto``: a dot pattern built from column phases of a 63-bit cyclic
  sequence, decodable from any 6x6 dot window;
* ``wavelet``: coordinates hidden in 4x4 blocks by an invertible GF(2)
  transform (needs external block alignment);
* ``meshcode``: a delimiter-free 48x576 pattern decodable from any 4x4
  window.
"""

from .bitgrid import (
    BitGrid,
    UniquenessReport,
    Window,
    read_pbm,
    strided_quad,
    subgrid,
    verify_uniqueness,
    write_pbm,
)
from .sequences import (
    CrtBasis,
    CyclicSequence,
    PhiTable,
    crt_combine,
    gen_quasi_debruijn,
    phi,
    phi_inv,
)

__version__ = "0.1.0"

__all__ = [
    "BitGrid",
    "Window",
    "UniquenessReport",
    "subgrid",
    "strided_quad",
    "verify_uniqueness",
    "read_pbm",
    "write_pbm",
    "CyclicSequence",
    "gen_quasi_debruijn",
    "PhiTable",
    "phi",
    "phi_inv",
    "CrtBasis",
    "crt_combine",
    "__version__",
]
