"""Circuits for continuous-time quantum walks on sparse graphs.

The graph is split into star forests, each star's walk is compiled exactly,
and a Suzuki product formula stitches the pieces into e^{-i gamma A t}. A dense
simulator and exact matrix exponentials certify the result on small graphs.
"""

__version__ = "0.1.0"
