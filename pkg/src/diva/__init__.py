"""Diffusion analytics backend: graphs, layouts, simulations, comparisons."""

__version__ = "0.1.0"
