import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(glob.glob("src/*.cpp")) + ["src/bindings/module.cpp"]

setup(
    ext_modules=[
        Pybind11Extension(
            "grbench._core",
            sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
            extra_compile_args=["-pthread"],
            extra_link_args=["-pthread"],
        )
    ],
    cmdclass={"build_ext": build_ext},
)
