"""Closed-support homology of configuration spaces of open surfaces and
other spaces whose one point compactification is a 2-complex."""
from .complex import (ChainComplexZ, TwoComplexPresentation, build_bar_complex, closed_surface_homology,
                      homology_cl, hn_presentation, kernel_K)
from .intlin import AbGroupInvariants, SparseIntMat, snf
from .magnus import FreeGroupWord, icfg_kernel, magnus_expand
from .shuffle import EdgeAlphabet, HElement, shuffle_product
from .surfaces import EndoSpec, SurfaceSpec, delta_zeta

__version__ = "0.1.0"

__all__ = [
    "AbGroupInvariants", "ChainComplexZ", "EdgeAlphabet", "EndoSpec", "FreeGroupWord", "HElement",
    "SparseIntMat", "SurfaceSpec", "TwoComplexPresentation", "build_bar_complex", "closed_surface_homology",
    "delta_zeta", "homology_cl", "hn_presentation", "icfg_kernel", "kernel_K", "magnus_expand",
    "shuffle_product", "snf",
]
