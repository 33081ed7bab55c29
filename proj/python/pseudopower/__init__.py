"""Bicomplex formal powers and transmutation operators for the 2-D Dirac
equation with a scalar potential.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (  # noqa: F401
    Bicomplex,
    DegeneratePairError,
    NotASolutionError,
    NotCompatibleError,
    Problem,
    RadiusTooLargeError,
    ZeroDivisorError,
    cumulative_integral,
    from_idempotent,
    idempotent_split,
    load_config,
    run_command,
)

__all__ = [
    "Bicomplex",
    "DegeneratePairError",
    "NotASolutionError",
    "NotCompatibleError",
    "Problem",
    "RadiusTooLargeError",
    "ZeroDivisorError",
    "cumulative_integral",
    "from_idempotent",
    "idempotent_split",
    "load_config",
    "run_command",
]
