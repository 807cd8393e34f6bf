#!/usr/bin/env python
#
# Sphinx configuration file
# see metadata.yaml in this repo for to update document-specific metadata

import os

import sphinx_rtd_theme
from documenteer.sphinxconfig.utils import form_ltd_edition_name


extensions = [
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.mathjax',
    'sphinx-prompt',
    'documenteer.sphinxext',
]

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

version = form_ltd_edition_name(
    git_ref_name=os.getenv('GITHUB_REF_NAME', default='main'))
release = version

project = 'xsquare: finite models of homotopy 3-types'
html_title = project
html_short_title = 'xsquare'

author = 'xsquare developers'

copyright = '2026 xsquare developers'

master_doc = 'index'

exclude_patterns = ['_build']

source_encoding = 'utf-8'

intersphinx_mapping = {}
