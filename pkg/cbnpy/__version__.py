"""
__version__.py
~~~~~~~~~~~~~~

Information about the current version of the cbnpy package.
"""

__title__ = 'cbnpy'
__description__ = 'cbnpy - attractors and stability of conjunctive Boolean networks'
__version__ = '0.1.0'  # 2026-10-17
__author__ = 'Henrik Hanssen'
__author_email__ = 'henrik.hanssen@gmail.com'
__license__ = 'Apache 2.0'
__url__ = 'https://github.com/rhedak/cbnpy'
__download_url__ = f"https://github.com/rhedak/cbnpy/archive/v{__version__}.tar.gz"
