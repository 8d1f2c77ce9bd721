"""Local constraints and the properly colored tree recursion."""
