"""Structured subgraph, linking, matching and extension stages of extract."""
