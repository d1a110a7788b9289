# Copyright 2026 The marketcore Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Configuration for the marketcore package."""

from setuptools import find_packages
from setuptools import setup

DEPENDENCIES = (
    'numpy>=1.17',
    'pandas>=1.1.0',
)

TEST_DEPENDENCIES = (
    'hypothesis>=5.0',
)

setup(
    name='marketcore',
    version='0.1.0',
    author='The marketcore Authors',
    description='Exact market equilibria and matching cores',
    long_description=(
        'Decides existence of market equilibria in bundle and multi-unit '
        'auctions with exact rational linear programming, and decides '
        'non-emptiness of the matching core of nonnegative TU games.'),
    packages=find_packages(exclude=('tests*',)),
    install_requires=DEPENDENCIES,
    extras_require={'tests': TEST_DEPENDENCIES},
    python_requires='>=3.6',
    license='Apache 2.0',
    keywords='auction equilibrium linear-programming cooperative-games core',
    classifiers=(
        'Programming Language :: Python :: 3',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ),
    include_package_data=True,
    package_data={'marketcore': ['data/*.json']},
    entry_points={'console_scripts': ['marketcore = marketcore.cli:main']},
)
