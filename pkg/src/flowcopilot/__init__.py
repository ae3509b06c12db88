"""flowcopilot: a copilot engine for node-graph generation workflows."""

__version__ = "0.1.0"
