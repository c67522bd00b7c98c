"""Summary: Storage backends for OpenQuantal reports.

Importance: Keeps persistence concerns isolated from the algebra engine.
Alternatives: Write reports to flat files only.
"""
