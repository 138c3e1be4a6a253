"""
Load metainformation about the package.
"""

from .__meta__ import *
