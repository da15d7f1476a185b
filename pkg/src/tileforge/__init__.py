"""tileforge: compile, grow and verify temperature-1 tile assembly systems."""

from .core import Assembly, TileType, Tileset, interacts, is_tau_stable
from .compiler import CompileOutput, compile_program, decompile, export_core
from .dsl import Program, parse, unparse
from .simulator import SimLimits, run_deterministic, run_exhaustive

__version__ = "0.1.0"

__all__ = [
    "Assembly",
    "CompileOutput",
    "Program",
    "SimLimits",
    "TileType",
    "Tileset",
    "compile_program",
    "decompile",
    "export_core",
    "interacts",
    "is_tau_stable",
    "parse",
    "run_deterministic",
    "run_exhaustive",
    "unparse",
    "__version__",
]
