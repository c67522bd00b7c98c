"""Summary: Package entry for OpenQuantal components.

Importance: Provides a single namespace for the finite algebra engine, services, and surfaces.
Alternatives: Split the algebra engine and the CLI/API surfaces into separate packages.
"""

__version__ = "0.1.0"
