# -*- coding: utf-8 -*-

from setuptools import setup, find_packages


with open('README.md') as f:
    readme = f.read()

setup(
    name='vplb',
    version='0.0.1',
    description='DG-IMEX direct and micro-macro solvers for Vlasov-Poisson-Lenard-Bernstein',
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=('tests', 'docs', 'benchmark')),
    install_requires=['numpy', 'scipy', 'numba'],
    extras_require={'test': ['pytest', 'mock']},
    entry_points={'console_scripts': ['vplb = vplb.diagnostics.cli:main']}
)
