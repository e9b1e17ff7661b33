"""
Utility functions for the stress engine.
"""

import os
import re

from django.conf import settings

# Options whose values are comma lists that may start with a minus sign.
LIST_OPTIONS = ("--beta", "--taus", "--means")
NEGATIVE_NUMBER = re.compile(r"^-\.?\d")


def attach_negative_values(argv):
    """
    Join "--beta -4,2,0" into "--beta=-4,2,0"; argparse would read the
    negative value as an option.
    """
    argv = list(argv)
    joined = []
    index = 0
    while index < len(argv):
        token = argv[index]
        following = argv[index + 1] if index + 1 < len(argv) else None
        if token in LIST_OPTIONS and following is not None and NEGATIVE_NUMBER.match(following):
            joined.append(f"{token}={following}")
            index += 2
            continue
        joined.append(token)
        index += 1
    return joined


def thread_count():
    """Worker threads for sweeps: ENGINE["THREADS"] (ENGINE_THREADS), at least 1."""
    engine = getattr(settings, "ENGINE", {}) if settings.configured else {}
    value = engine.get("THREADS", os.environ.get("ENGINE_THREADS", 1))
    try:
        return max(int(value), 1)
    except (TypeError, ValueError):
        return 1
