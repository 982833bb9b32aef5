# -*- coding: utf-8 -*-

from setuptools import setup

classifiers = (
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Science/Research',
    'Programming Language :: Python :: 3',
    'License :: OSI Approved :: MIT License',
    'Topic :: Scientific/Engineering :: Physics',
)

required = (
    'numpy>=1.20',
    'scipy>=1.7',
    'pandas>=1.5',
    'click>=7.0',
)

kw = {
    'name': 'gatecheck',
    'version': '0.1.0',
    'description': 'Rydberg-blockade controlled-phase gates and their '
                   'robustness to control errors',
    'long_description': open('README.rst', 'rt').read(),
    'license': 'MIT License',
    'keywords': 'rydberg blockade quantum gates robustness',
    'classifiers': classifiers,
    'packages': ['gatecheck'],
    'install_requires': required,
    'extras_require': {'test': ['pytest']},
    'entry_points': {
        'console_scripts': ['gatecheck = gatecheck.cli:cli'],
    },
    'python_requires': '>=3.8',
    'zip_safe': True,
}

setup(**kw)
