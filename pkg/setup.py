from setuptools import setup, find_packages



import pathlib

here = pathlib.Path(__file__).parent.resolve()

# Arguments marked as "Required" below must be included for upload to PyPI.
# Fields marked as "Optional" may be commented out.

setup(
    # Distribution name; the import package is `cplattice` as well.
    name="cplattice",  # Required
    # Versions should comply with PEP 440:
    # https://www.python.org/dev/peps/pep-0440/
    version="1.0",  # Required
    # One-line summary shown by package indexes.
    description=(
        "Exact ideal-lattice calculator for C*-correspondences "
        "over finite-dimensional multi-matrix algebras"
    ),  # Optional
    # When your source code is in a subdirectory under the project root, e.g.
    # `src/`, it is necessary to specify the `package_dir` argument.
    package_dir={"": "."},  # Optional
    # Tests live next to the package and are not installed.
    packages=find_packages(".", exclude=["tests", "tests.*"]),  # Required
    python_requires=">=3.10, <4",
    # numpy: dense multiplicity matrices and exact (object dtype) matrix powers.
    # lxml: calculator configuration files.
    # networkx: transitive reduction of the pair lattice, acyclicity tests.
    # jsonschema: validation of input documents.
    # graphviz: DOT source of pair lattices.
    install_requires=[
        "numpy>=2.2.6",
        "lxml>=5.2.1",
        "networkx>=3.2",
        "jsonschema>=4.18",
        "graphviz>=0.20",
        ],

    extras_require={  # Optional
        "test": ["pytest>=7.4", "hypothesis>=6.90", "pydot>=2.0"],
    },
    # Installs a `cplattice` executable that dispatches to the CLI.
    entry_points={  # Optional
        "console_scripts": [
            "cplattice=cplattice.cli:main",
        ],
    },
)
