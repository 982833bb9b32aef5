# -*- coding: utf-8 -*-
#
# gatecheck documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import sys, os

sys.path.insert(0, os.path.abspath('../..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon',
              'sphinx.ext.mathjax']

templates_path = ['templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'gatecheck'
copyright = u'2026, gatecheck developers'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1.0'

exclude_patterns = []
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
htmlhelp_basename = 'gatecheckdoc'
