"""Monochromatic tree embedding from dense color classes."""
