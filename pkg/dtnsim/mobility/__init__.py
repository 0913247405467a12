"""Map graphs, WKT map files, movement models and the synthetic map generator."""
from dtnsim.mobility.graph import MapGraph, shortest_path
from dtnsim.mobility.movement import MapMovement, Movement, ScriptedMovement, StationaryMovement
from dtnsim.mobility.wkt import load_map, parse_wkt, write_wkt

__all__ = [
    "MapGraph",
    "MapMovement",
    "Movement",
    "ScriptedMovement",
    "StationaryMovement",
    "load_map",
    "parse_wkt",
    "shortest_path",
    "write_wkt",
]
