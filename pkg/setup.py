# -*- coding: utf-8 -*-
from setuptools import setup

setup(
    name='ptdirac',
    version='1.0.0',
    description='含γ5质量项的PT对称Dirac哈密顿量数值工具',
    packages=['ptdirac', 'common', 'config', 'utils'],
    install_requires=[
        'numpy>=1.24.0',
        'scipy>=1.10.0',
        'pandas>=2.0.0',
        'tqdm>=4.66.0',
        'python-dotenv>=1.0.0',
        'PyYAML>=6.0',
    ],
    extras_require={
        'test': ['pytest>=8.0.0', 'hypothesis>=6.90.0'],
    },
    entry_points={
        'console_scripts': ['ptdirac=ptdirac.cli:main'],
    },
    python_requires='>=3.8',
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent'
    ]
)
