"""Run statistics: accumulation, summaries, CSV reports and figures."""
