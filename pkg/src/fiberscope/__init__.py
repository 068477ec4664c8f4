"""Fibers of the persistence map on graphs."""
