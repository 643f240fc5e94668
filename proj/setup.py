import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp) / ext.name
        build_dir.mkdir(parents=True, exist_ok=True)
        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}{os.sep}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DIDCP_BUILD_TESTS=OFF",
        ]
        src = Path(__file__).resolve().parent
        subprocess.run(["cmake", str(src), *cmake_args],
                       cwd=build_dir, check=True)
        subprocess.run(["cmake", "--build", ".", "--target", "idcp_python"],
                       cwd=build_dir, check=True)


setup(
    ext_modules=[CMakeExtension("idcp._idcp")],
    cmdclass={"build_ext": CMakeBuild},
)
