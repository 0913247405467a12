"""Shared infrastructure: configuration, errors, random streams."""
