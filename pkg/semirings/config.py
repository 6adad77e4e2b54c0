"""
Runtime settings for enumeration caps and closure bounds.
"""

import os
from typing import Any, Dict

from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigurationError

MAX_ORDER_ENV = "SEMIRING_MAX_ORDER"


class KernelSettings(BaseModel):
    """Bounds for every exhaustive search in the kernel."""

    model_config = {"frozen": True}

    max_order: int = Field(default=4, ge=1, le=6, description="Enumeration cap")
    closure_max_order: int = Field(default=3, ge=1, le=6, description="Pairwise closure suites")
    probe_max_order: int = Field(default=3, ge=1, le=6, description="CSRstar probes for couniversality")
    cocone_max_order: int = Field(default=4, ge=1, le=6, description="Universal-property targets")
    canonical_max_order: int = Field(default=6, ge=1, le=9, description="canonical_form bound")
    tensor_bound_slack: int = Field(default=3, ge=1, le=8, description="Extra tensor bounds tried")
    tensor_universe_cap: int = Field(default=250_000, ge=1, description="Largest multiset universe")


def load_settings(**overrides: Any) -> KernelSettings:
    """Build settings from the environment, then apply explicit overrides."""
    values: Dict[str, Any] = {}

    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is not None and raw.strip():
        try:
            values["max_order"] = int(raw)
        except ValueError as e:
            raise ConfigurationError(f"{MAX_ORDER_ENV}={raw!r} is not an integer") from e

    values.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return KernelSettings(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid kernel settings: {e}") from e
