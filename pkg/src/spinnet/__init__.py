"""Exact evaluation and asymptotics of classical SU(2) spin networks."""
