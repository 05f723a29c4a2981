from setuptools import setup, find_packages

from heckesign import __version__

long_description = """**heckesign** computes normalized Hecke eigenvalues of
holomorphic newforms and measures how their signs are distributed.

Eigenvalues come from an eta-product expansion (the discriminant form),
point counts on elliptic curves (11a and 37a), or explicit tables. On top
of them the package provides:

- Sato-Tate angles and a bounded-height linear relation screen
- Closed-form Sato-Tate measures of sign regions
- Sign densities over powers of one prime and over all primes
- Pair Sato-Tate goodness-of-fit tests
- Sign densities of half-integral weight forms through the Shimura relation

A `heckesign` command runs every experiment and writes JSON and CSV reports.
"""

setup(
    name='heckesign',
    version=__version__,
    description='Sign distributions of Hecke eigenvalues',
    long_description=long_description,
    classifiers=[
      'Development Status :: 3 - Alpha',
      'Intended Audience :: Science/Research',
      'Topic :: Scientific/Engineering :: Mathematics',
      'License :: OSI Approved :: MIT License',
      'Programming Language :: Python :: 3',
      'Programming Language :: Python :: 3.10',
      'Programming Language :: Python :: 3.11',
      'Programming Language :: Python :: 3.12',
    ],
    keywords='hecke eigenvalues newforms sato-tate equidistribution',
    python_requires='>=3.10.0',
    license='MIT',
    packages=find_packages(include=["heckesign", "heckesign.*"]),
    install_requires=['numpy>=1.22', 'scipy>=1.8'],
    entry_points={
      'console_scripts': ['heckesign=heckesign.cli.main:main'],
    },
    tests_require=['pytest>=2.8.0'],
    zip_safe=False,
)
