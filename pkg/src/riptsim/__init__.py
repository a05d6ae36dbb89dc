"""riptsim: resonant inductive power transfer coil-link simulator.

From parametric coil geometry through Neumann-integral inductance
extraction and series-series resonant circuit solution to design sweeps,
Pareto turn-count optimization, and first-order battery charging.
"""

from riptsim._kernels import BACKEND as kernel_backend  # noqa: F401

__version__ = "0.1.0"
