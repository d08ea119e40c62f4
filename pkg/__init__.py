"""
Perforated Surfaces Toolkit

A package for classifying perforated surfaces and certifying the non-Hopfian
and covering-space constructions around them.
"""

__version__ = '1.0.0'
