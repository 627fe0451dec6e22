import os
import setuptools

with open(os.path.join(os.path.dirname(__file__), "VERSION")) as version_file:
    version = version_file.read().strip()

with open(os.path.join(os.path.dirname(__file__), "README.rst")) as f:
    readme = f.read()


setuptools.setup(
    name="lpga",
    version=version,
    description="Leavitt path algebras and their spatial representations "
    "on Lp spaces.",
    long_description=readme,
    long_description_content_type="text/x-rst",
    packages=setuptools.find_packages(exclude=("tests", "docs")),
    package_data={"lpga": ["data/*.json"]},
    license="BSD",
    keywords=[
        "Leavitt path algebras",
        "operator algebras",
        "Lp spaces",
        "Cuntz-Krieger families",
        "computer algebra",
    ],
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Development Status :: 3 - Alpha",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    install_requires=[
        "aspecd>=0.9.0",
        "numpy",
        "scipy",
        "sympy>=1.7",
        "networkx",
    ],
    extras_require={
        "dev": [
            "prospector[with_pyroma]",
            "black",
            "hypothesis",
        ],
        "docs": [
            "sphinx",
            "sphinx-rtd-theme",
        ],
    },
    entry_points={
        "console_scripts": ["lpga = lpga.cli:main"],
    },
    python_requires=">=3.7",
)
