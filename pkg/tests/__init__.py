"""Tests for the projection engine and the CLI."""
