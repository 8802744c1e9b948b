# coding: utf-8

# Copyright 2024 The pruneto developers, all rights reserved.
#
# This file is part of pruneto.
#
# pruneto is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free
# Software Foundation, either version 3.0 of the License, or any later version.
#
# pruneto is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along
# with pruneto. If not, see <https://www.gnu.org/licenses/>.

from pathlib import Path
from setuptools import find_packages, setup

HERE = Path(__file__).parent

version_context = {}
with open(HERE / "pruneto" / "__version__.py") as f:
    exec(f.read(), version_context)

author = "The pruneto developers"
__version__ = version_context["__version__"]

description = "Generative design on 2D grids: design space pruning with pointwise\
 constraints (unsweep, tool accessibility) followed by Pareto tracing topology optimization."
license = "GPL-v3.0"

install_requires = [
    "pandas >= 1.5.0, < 3.0.0",
    "numpy >= 1.20.1, < 2.0.0",
    "scipy >= 1.8.0",
    "plotly >= 4.12.0",
    "numexpr >= 2.7.0",
    "xarray >= 0.19.0",
    "opencv-python-headless >= 4.5.0",
]

classifiers = [
    "Development Status :: 4 - Beta",
    "Intended Audience :: Science/Research",
    "Intended Audience :: Developers",
    "Programming Language :: Python",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
    "Programming Language :: Python :: 3.11",
    "Programming Language :: Python :: 3.12",
    "Programming Language :: Python :: 3 :: Only",
    "Operating System :: OS Independent",
    "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
    "Topic :: Scientific/Engineering",
    "Topic :: Scientific/Engineering :: Mathematics",
    "Topic :: Scientific/Engineering :: Physics",
]

keywords = [
    "topology optimization",
    "generative design",
    "pareto",
    "topological sensitivity",
    "finite elements",
    "configuration space",
    "accessibility",
    "machining",
    "additive manufacturing",
    "unsweep",
]

setup(
    name="pruneto",
    version=__version__,
    license=license,
    python_requires=">=3.9, <3.13",
    description=description,
    author=author,
    long_description=open("README.md", "r").read(),
    long_description_content_type="text/markdown",
    install_requires=install_requires,
    classifiers=classifiers,
    keywords=keywords,
    packages=find_packages(exclude=["tests"]),
    data_files=[("etc/pruneto", ["config/config.ini"])],
    entry_points={"console_scripts": ["pruneto = pruneto.cli:main"]},
    include_package_data=True,
    zip_safe=False,
)
