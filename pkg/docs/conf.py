"""
Sphinx configuration for the qrevsim documentation.
"""

import datetime
import os.path as path
import sys

sys.path.insert(0, path.abspath('../'))

import qrevsim.__meta__ as meta

project = meta.NAME.lower()
author = meta.AUTHOR
copyright = f'{datetime.datetime.now().year}, {author}'
release = meta.VERSION
version = '.'.join(release.split('.')[0:2])


def run_apidoc(_):
    from sphinx.ext import apidoc
    apidoc.main(["--force", "--separate", "--module-first", "-o", "source/packages",
                 path.join("..", project), path.join("..", "tests")])


def retitle_modules(_):
    pth = 'source/packages/modules.rst'
    with open(pth) as modules:
        lines = modules.read().splitlines()
    lines[0:2] = ['qrevsim API', '===========']
    with open(pth, 'w') as modules:
        modules.write('\n'.join(lines))


def setup(app):
    app.connect('builder-inited', run_apidoc)
    app.connect('builder-inited', retitle_modules)


extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
]

# docstrings use Google style "Returns:" and "Raises:" sections
napoleon_google_docstring = True
napoleon_numpy_docstring = False

master_doc = 'index'
exclude_patterns = ['_build']

html_theme = 'alabaster'
html_theme_options = {'description': meta.DESCRIPTION}

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
