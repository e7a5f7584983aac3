from setuptools import setup, find_packages

setup(
    name="zk-kernel-lab",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    py_modules=["main", "config"],
    install_requires=[
        "loguru>=0.6.0",
        "numpy>=1.24.3",
        "pydantic>=2.6.4",
        "python-dotenv>=1.0.0",
        "sympy>=1.12",
    ],
    extras_require={"test": ["pytest>=7.4.0"]},
    description="零知识证明 Prover 内核（MSM/NTT）的运算计数与性能表征工具",
    long_description=open("README.md", "r", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "zkprophet-lab=main:main_cli",
            "kernel-lab=main:main_cli",
        ],
    },
)
