"""Partial orientations, feedback-stable orderings and tournament paths."""
