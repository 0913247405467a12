"""Simulation engine: nodes, world construction, the stepping loop, run/sweep."""
