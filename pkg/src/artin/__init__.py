"""Auslander-Reiten theory for bound quiver algebras over prime fields."""

__version__ = "0.1.0"
