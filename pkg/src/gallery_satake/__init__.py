"""Gallery combinatorics and generic Hecke algebras for residually split
reductive groups over local fields, in exact rational arithmetic."""

from .rootdata import load_preset, PRESET_NAMES, PresetError, TorsionError

__all__ = ["load_preset", "PRESET_NAMES", "PresetError", "TorsionError"]
__version__ = "0.1.0"
