"""Brute-force reference searches. Answers are exact or explicitly "unknown"."""
