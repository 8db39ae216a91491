"""Shared helpers package."""
