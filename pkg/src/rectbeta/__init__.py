"""Exact singular-value statistics of sums of invariant rectangular matrices.

Submodules: ``partitions``, ``series``, ``jack``, ``bessel_dunkl``,
``rectconv``, ``qgamma``, ``duality``, ``montecarlo``, plus the ``api``
handlers shared by ``cli`` and ``service``.
"""

__version__ = "0.1.0"
