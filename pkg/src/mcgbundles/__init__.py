"""Exact verification of mapping class group relations and surface bundle invariants."""
