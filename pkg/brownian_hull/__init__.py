"""Simulation and verification lab for the hull and winding regions of the planar Brownian loop."""

__version__ = "0.1.0"
