"""Certified arithmetic for Liouville-type numbers, power towers and their transcendence."""

__version__ = "0.1.0"
