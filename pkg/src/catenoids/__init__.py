"""Numerical toolkit for the exceptional CMC-1 catenoids in de Sitter 3-space.

Submodules: :mod:`~catenoids.lorentz` (ambient geometry), :mod:`~catenoids.surfaces`
(the parametrizations), :mod:`~catenoids.singular` (singular sets and limits),
:mod:`~catenoids.trochoid` (the limit curve), :mod:`~catenoids.diffgeo`
(finite-difference curvature), :mod:`~catenoids.projection` (3D models),
:mod:`~catenoids.mesh`, :mod:`~catenoids.export`, :mod:`~catenoids.verify`
and :mod:`~catenoids.cli`.
"""

__version__ = "0.1.0"

from .surfaces import Family, SurfaceSpec, evaluate

__all__ = ["Family", "SurfaceSpec", "evaluate", "__version__"]
