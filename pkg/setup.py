from setuptools import setup, find_packages


def scm_version():
    def local_scheme(version):
        if version.tag and not version.distance:
            return version.format_with("")
        else:
            return version.format_choice("+{node}", "+{node}.dirty")
    return {
        "relative_to": __file__,
        "version_scheme": "guess-next-dev",
        "local_scheme": local_scheme
    }


setup(
    name="dporient",
    use_scm_version=scm_version(),
    description="Orientation and Eulerian subdigraph certificates for DP-coloring",
    license="BSD",
    python_requires="~=3.8",
    setup_requires=["wheel", "setuptools", "setuptools_scm"],
    install_requires=["networkx>=2.4", "sympy>=1.5"],
    extras_require={"test": ["hypothesis>=5.0"]},
    packages=find_packages(exclude=["examples", "examples.*"]),
    entry_points={
        "console_scripts": ["dporient = dporient.cli:main"],
    },
)
