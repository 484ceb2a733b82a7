"""Test package for GEOPOLITIX."""
