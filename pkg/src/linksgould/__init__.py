"""Exact Links-Gould invariants LG^m (m = 1..4) of braid closures."""

__version__ = "0.1.0"

from .braid import BraidWord, link_lookup, parse  # noqa: E402
from .invariant import InvariantResult, compute, render_machine, render_paper  # noqa: E402
from .statemodel import build  # noqa: E402

__all__ = [
    "__version__", "BraidWord", "parse", "link_lookup", "InvariantResult", "compute",
    "render_paper", "render_machine", "build",
]
