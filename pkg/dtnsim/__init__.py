"""
dtnsim: deterministic delay-tolerant network simulator for
post-disaster rescue scenarios (Epidemic and Spray-and-Wait routing).
"""
__version__ = "1.0.0"
