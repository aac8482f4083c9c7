#

import os
import sys

sys.path.insert(0, os.path.abspath("../../"))

import fscalc

description = "Exact parameter calculus for Besov and Triebel-Lizorkin spaces"
copyright = "2026, fscalc contributors"
project = "fscalc"

version = release = fscalc.__version__

html_theme = "furo"
html_title = f"{project} <small><b>{{{release}}}</b></small>"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.todo",
    "sphinx.ext.viewcode",
    "sphinxcontrib.programoutput",
    "sphinx_inline_tabs",
    "sphinx_paramlinks",
]

autodoc_default_options = {
    "members": True,
    "member-order": "bysource",
}
add_module_names = False
autoclass_content = "both"
autodoc_typehints_format = "short"
autodoc_preserve_defaults = True
autosectionlabel_maxdepth = 3
autosectionlabel_prefix_document = True

intersphinx_mapping = {
    "python": ("http://docs.python.org/", None),
    "click": ("https://click.palletsprojects.com/en/latest/", None),
    "rich": ("https://rich.readthedocs.io/en/stable/", None),
}
