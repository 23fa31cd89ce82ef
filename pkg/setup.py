from setuptools import setup, find_packages

setup(
    name="grfrob",
    version="1.0.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    package_data={
        "grfrob": ["config/*.json", "config/*.yaml"]
    },
    include_package_data=True,
)
