"""
Tests for the Monte Carlo experiment layer.

Trials are seeded, so every expectation here is either exact for a given
seed or a loose statistical band that holds with overwhelming margin.
"""
