"""ecotrip: a sustainable city-trip recommender engine.

Deterministic multi-criteria scoring, trade-off nudges, transport CO2e
estimation, and a simulated booking flow, exposed through a JSON HTTP API
and a CLI.
"""

__version__ = "0.1.0"
