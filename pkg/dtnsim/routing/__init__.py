"""Routing protocols behind a single Router contract."""
