# -*- coding: utf-8 -*-
#
# TowerBench documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# The package is documented from the source tree.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest', 'sphinx.ext.mathjax', 'sphinx.ext.viewcode']

source_suffix = '.rst'

master_doc = 'contents'

project = u'TowerBench'
copyright = u'2026, the TowerBench developers'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1'

exclude_patterns = ['build']

pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'sphinxdoc'

htmlhelp_basename = 'TowerBenchdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('contents', 'TowerBench.tex', u'TowerBench Documentation',
   u'The TowerBench developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('contents', 'towerbench', u'TowerBench Documentation',
     [u'The TowerBench developers'], 1)
]
