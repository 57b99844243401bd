"""Constructive certificates for the monochromatic-size bound on colored lattice cubes."""

__version__ = "0.1.0"
