"""Numerical tolerances and defaults.

Values live in a plain mapping, read with :func:`get_setting`. Callers that
need different tolerances build their own mapping with :func:`configure` and
pass it down; the defaults are never mutated.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Any, Mapping

__all__ = ["DEFAULT_SETTINGS", "get_setting", "configure"]

DEFAULT_SETTINGS: Mapping[str, Any] = MappingProxyType(
    {
        # Componentwise amplitude distance under which two terms are merged
        "MERGE_TOLERANCE": 1e-12,
        # Terms with |coeff| at or below this are dropped by simplify()
        "DROP_TOLERANCE": 1e-12,
        # |amp| below this counts as "no photon" for post-selection
        "VACUUM_TOLERANCE": 1e-9,
        # Smallest protocol amplitude, well clear of VACUUM_TOLERANCE
        "MIN_ALPHA": 1e-6,
        # Allowed magnitude spread on a mode measured without distinguishing +-alpha
        "MAGNITUDE_TOLERANCE": 1e-9,
        # Post-selection input must have norm 1 within this
        "NORMALIZATION_TOLERANCE": 1e-10,
        # Smallest norm^2 that normalize() accepts
        "NUMERIC_FLOOR": 1e-24,
        # Final states must reach the GHZ-form target within this
        "FIDELITY_TOLERANCE": 1e-12,
        # Gram matrix checks
        "HERMITIAN_TOLERANCE": 1e-12,
        "PSD_TOLERANCE": -1e-10,
        # Fock oracle
        "ORACLE_N_MAX": 60,
        "ORACLE_TAIL_LIMIT": 1e-8,
        "ORACLE_MAX_AMPLITUDE": 4.0,
        "ORACLE_MIN_TOLERANCE": 1e-10,
        # Output formatting
        "CSV_SIGNIFICANT_DIGITS": 9,
    }
)


def get_setting(name: str, settings: Mapping[str, Any] | None = None) -> Any:
    """Look up a setting, falling back to the defaults.

    Args:
        name: Setting key, e.g. ``"VACUUM_TOLERANCE"``.
        settings: Optional mapping that overrides the defaults.

    Returns:
        The configured value.

    Raises:
        KeyError: If the key is not a known setting.
    """
    if name not in DEFAULT_SETTINGS:
        raise KeyError(f"unknown setting {name!r}")
    source = settings or DEFAULT_SETTINGS
    return source.get(name, DEFAULT_SETTINGS[name])


def configure(**overrides: Any) -> Mapping[str, Any]:
    """Return a new read-only mapping with ``overrides`` applied to the defaults."""
    unknown = sorted(set(overrides) - set(DEFAULT_SETTINGS))
    if unknown:
        raise KeyError(f"unknown settings: {', '.join(unknown)}")
    merged = dict(DEFAULT_SETTINGS)
    merged.update(overrides)
    return MappingProxyType(merged)
