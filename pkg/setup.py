from setuptools import find_packages, setup

if __name__ == "__main__":
    setup(
        name="skh",
        packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
        version="0.1.0",
        install_requires=[
            "numpy",
            "scipy",
            "networkx",
            "setuptools",
            "setproctitle",
            "filelock",
            "gin-config",
        ],
    )
