"""Modal Kleene algebra with divergence over small finite models."""

__version__ = "0.1.0"
