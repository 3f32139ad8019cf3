# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.viewcode",
    "autoapi.extension",
]

# API pages are generated from the package sources.
autoapi_type = "python"
autoapi_dirs = ["../nilpotentia"]

source_suffix = ".rst"
master_doc = "index"

project = "nilpotentia"
copyright = "2020, Eric Abruzzese"
author = "Eric Abruzzese"

version = "0.1.0"
release = "0.1.0"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"

# -- Options for manual page output ---------------------------------------

man_pages = [
    (
        master_doc,
        "nilpotentia",
        "Malcev nilpotency of finite semigroups",
        [author],
        1,
    )
]
