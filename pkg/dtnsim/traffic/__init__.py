"""Traffic generation: the SOS creation schedule."""
from dtnsim.traffic.generator import CreationEvent, schedule_events, write_events_csv

__all__ = ["CreationEvent", "schedule_events", "write_events_csv"]
