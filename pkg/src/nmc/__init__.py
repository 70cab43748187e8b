"""Feature-preserving isosurface extraction with learned per-cube codes."""

__version__ = "0.1.0"
