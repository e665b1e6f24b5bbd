"""Setup configuration for ghz-ecs-concentration."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from setuptools import find_packages, setup

# Read version from __about__.py
about: dict[str, Any] = {}
with open(Path(__file__).parent / "ecs_concentration" / "__about__.py") as f:
    exec(f.read(), about)  # noqa: S102

with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="ghz-ecs-concentration",
    version=about["__version__"],
    author=about["__author__"],
    author_email="jordan.auge@example.com",
    description="Entanglement concentration simulator for 3-mode GHZ-type entangled coherent states",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/jordanauge/ghz-ecs-concentration",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"ecs_concentration": ["templates/*.j2"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    keywords="quantum-optics entangled-coherent-states ghz entanglement-concentration",
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "jinja2>=3.0",
    ],
    extras_require={
        "dev": ["pytest>=7.0", "pytest-cov>=4.0", "ruff>=0.1.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "ghz-ecs = ecs_concentration.cli:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
    license="MIT",
)
