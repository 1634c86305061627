"""twogen: exact-arithmetic certification that finite simple classical
groups are generated by an involution together with an element of prime
order.

The package computes, entirely in exact integer/rational arithmetic,
upper bounds for the probability that a random involution and a random
element of a well-chosen prime order fail to generate the group; a bound
strictly below 1 certifies generation.  Submodules:

* :mod:`twogen.exactnum`     — primality, factorization, primitive prime divisors
* :mod:`twogen.grouporders`  — group taxonomy and exact order formulas
* :mod:`twogen.involutions`  — involution-count bounds and class sizes
* :mod:`twogen.catalog`      — the maximal-subgroup candidate catalog
* :mod:`twogen.bounds`       — exact-rational bound assembly and verdicts
* :mod:`twogen.coverage`     — static lookup: which route covers which group
* :mod:`twogen.cli`          — command-line verifier (certificates, sweeps)
* :mod:`twogen.service`      — HTTP service exposing the same operations
"""

__version__ = "0.1.0"

from .grouporders import GroupFamily, GroupSpec  # noqa: F401
