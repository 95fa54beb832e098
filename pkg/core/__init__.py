"""
braidbook core package.
Braid words, exact linear algebra, the Burau representation, orderings and
the topology reports built on them.
"""

__version__ = "0.3.0"
__author__ = "braidbook developers"
__app_name__ = "braidbook"
