"""charforge: deterministic pipeline for person-entity characterization
corpora and their evaluation."""

__version__ = "0.1.0"
