"""Robustness of multi-qubit entanglement under local depolarizing noise."""
from .linalg import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
