#!/usr/bin/env python3
"""
Setup script for the superqubits packages.

This allows you to install the package in development mode:
    pip install -e .

After installation, you can import the algebra from anywhere:
    from grassmann import GrassmannElement
"""

from setuptools import find_packages, setup

setup(
    packages=find_packages(exclude=["tests", "tests.*", "examples*"]),
    py_modules=["app"],
)
