"""gamesmith: staged question-to-game pipeline with deterministic Quality Gates.

Importing the package registers every message schema, including the
library's outcome records and the tracing events.
"""

from gamesmith import contracts, domain, gates, library, pipeline, providers, tracing
from gamesmith._kernels import KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "contracts",
    "domain",
    "gates",
    "library",
    "pipeline",
    "providers",
    "tracing",
]
