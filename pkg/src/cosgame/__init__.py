"""Cost of stability for coalitional games."""
