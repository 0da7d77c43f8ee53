from setuptools import find_packages, setup

with open("requirements.txt", encoding="utf-8") as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith(("pytest", "hypothesis"))]

setup(
    name="fuscat",
    version="0.1.0",
    description="Exact verification and categorification obstructions for rank-4 based rings",
    packages=find_packages(exclude=("tests", "examples", "examples.*")),
    py_modules=["fuscat"],
    install_requires=requirements,
    extras_require={"test": ["pytest>=7.4.0", "hypothesis>=6.88.0"]},
    entry_points={"console_scripts": ["fuscat = fuscat:main"]},
    python_requires=">=3.9",
)
