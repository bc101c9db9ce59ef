"""Runtime limits.

Enumeration-heavy operations guard themselves against blowup. The budget is
read from the environment on every call so tests can tighten or relax it
without re-importing anything.
"""

import os

DEFAULT_MAX_ENUM = 1_000_000

# Carrier caps that are structural rather than budget-driven: past these sizes
# the constructions stop being "desk scale" regardless of patience.
MAX_HAUSDORFF_FIBER = 12
MAX_VALIDATED_CARRIER = 40
MAX_UPSET_BASE = 4


def max_enum() -> int:
    raw = os.environ.get("QUANTCAT_MAX_ENUM")
    if raw is None:
        return DEFAULT_MAX_ENUM
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_ENUM
    return value if value > 0 else DEFAULT_MAX_ENUM
