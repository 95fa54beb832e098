"""Output helpers for braidbook: JSON codecs and plain-text tables."""
