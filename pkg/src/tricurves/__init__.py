"""Exact negative-curve and Mori-Dream-Space computations for blowups of
toric surfaces given by rational plane triangles."""

__version__ = "0.1.0"
