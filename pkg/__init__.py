"""
braidbook - braids, Burau matrices and branched double covers
Exact Burau and Alexander computations, Dehornoy ordering and fractional
Dehn twist coefficients, and the open book data of branched double covers.
"""

__version__ = "0.3.0"
__author__ = "braidbook developers"
__app_name__ = "braidbook"
