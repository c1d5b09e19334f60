"""
Slotted wireless scheduling under delayed state observation.

Runs a scheduling policy with instantaneous state (ideal), with stale state
(naive) or on an emulated replica tracked at lag D (universal tracking).
"""

from dtsim.core.config import settings

__version__ = settings.APP_VERSION
