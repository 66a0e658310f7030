"""Exact p-adic Asai transfer of Hilbert modular eigenpackets to GL(4).

Modules, bottom-up: ``exact_algebra`` (rationals, sparse polynomials, series),
``quadratic_field``, ``hilbert_eigensystem``, ``weight_slope``,
``asai_transfer``, ``asai_lfunction``, ``archimedean``, ``fileformat`` and
``cli``.  ``splitting`` and ``properties`` hold the independent oracles and
the seeded property suite.
"""

__version__ = "0.1.0"
