"""
Metainformation about qrevsim.

Attributes:
    NAME (str): name of the package.
    PATH (str): path to the package location.
    VERSION (str): current version of the package.
    AUTHOR (str): author of the package.
    DESCRIPTION (str): short summary of the package objective.
    KEYWORDS (str): keywords related to the package.
"""

NAME = 'qrevsim'
PATH = NAME
VERSION = '0.1'
AUTHOR = 'qrevsim developers'
DESCRIPTION = 'Quantum Reversibility Simulator (qrevsim) simulates the tradeoff between the reliability and the ' \
              'reversibility of a quantum measurement.'
KEYWORDS = ('weak quantum measurement simulator '
            'measurement reversal coherent state discrimination')
