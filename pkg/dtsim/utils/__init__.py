"""
Utility functions for the simulator: validators, formatting helpers and CSV/table export.
"""
