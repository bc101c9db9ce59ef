"""Exact checking and construction for quantaloid-enriched structures."""

__version__ = "0.1.0"
