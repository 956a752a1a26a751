"""Exact class groups, rational cones of module classes, and validators for them."""

__version__ = "0.1.0"

from conelab.errors import ConelabError, InconsistentDataError, InputError, ParseError  # noqa: E402

__all__ = ["ConelabError", "InconsistentDataError", "InputError", "ParseError", "__version__"]
