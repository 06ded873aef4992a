#!/usr/bin/env python
from setuptools import setup, find_packages

from lsclib.lib import config

CURRENT_VERSION = config.VERSION_STRING

required_packages = [
    'appdirs==1.4.4',
    'python-dateutil==2.8.2',
    'colorlog==6.8.0',
    'cachetools==5.3.2',
    'pytest==7.4.4',
    'pytest-cov==4.1.0',
    'hypothesis==6.92.1',
]

setup_options = {
    'name': 'lsc-lib',
    'version': CURRENT_VERSION,
    'author': 'lsc-lib developers',
    'license': 'MIT',
    'description': 'Linear substitution calculus, its abstract machines and a distillation checker',
    'long_description': open('README.md').read(),
    'long_description_content_type': 'text/markdown',
    'keywords': 'lambda calculus, explicit substitutions, abstract machines',
    'classifiers': [
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Operating System :: POSIX",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Software Development :: Interpreters",
        "Topic :: Software Development :: Libraries :: Python Modules",
    ],
    'provides': ['lsclib'],
    'packages': find_packages(exclude=['examples', 'examples.*']),
    'python_requires': '>=3.8',
    'zip_safe': False,
    'setup_requires': ['appdirs'],
    'install_requires': required_packages,
    'include_package_data': True,
    'entry_points': {
        'console_scripts': [
            'lsc = lsclib.cli:main',
        ],
    },
}

setup(**setup_options)
