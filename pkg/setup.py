from setuptools import setup, find_packages

setup(
    name="antipolar-core",
    version="0.1.0",
    description="Face lattices, polarity certificates and diameter flows for anti-self-polar 4-polytopes.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    include_package_data=True,
    install_requires=[
        "numpy",
        "scipy>=1.11",
        "pydantic>=2",
        "python-dotenv",
    ],
    extras_require={
        "dev": ["pytest", "black==22.10.0"],
    },
    entry_points={
        "console_scripts": ["antipolar=antipolar.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
)
