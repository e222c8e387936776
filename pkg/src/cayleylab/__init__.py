"""cayleylab: a finite-group random-graph laboratory.

Builds random Cayley and Latin square graphs, estimates diameter-2 threshold
constants by Monte Carlo, and brute-force-verifies the combinatorial
structures and closed-form bounds those thresholds rest on.
"""

from ._kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
