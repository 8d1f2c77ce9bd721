"""Generators for the adversarial colorings and the random/lexical baselines."""
