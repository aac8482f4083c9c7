"""
setup.py for fscalc


"""

import os

from setuptools import find_packages, setup

this_dir = os.path.abspath(os.path.dirname(__file__))
REQUIREMENTS = filter(
    None, open(os.path.join(this_dir, "requirements", "main.txt")).read().splitlines()
)
VERSION: dict = {}
exec(open(os.path.join(this_dir, "fscalc", "_version.py")).read(), VERSION)

setup(
    name="fscalc",
    license="MIT",
    zip_safe=False,
    version=VERSION["__version__"],
    install_requires=list(REQUIREMENTS),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    description="Parameter calculus and regularity bootstraps for Besov and "
    "Triebel-Lizorkin spaces",
    long_description=open("README.rst").read(),
    packages=find_packages(exclude=["tests*"]),
    python_requires=">=3.9",
    include_package_data=True,
    package_data={
        "fscalc": ["py.typed"],
    },
    entry_points={
        "console_scripts": ["fscalc=fscalc.commands:main"],
    },
)
