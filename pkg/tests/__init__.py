"""Tests for the Brownian hull lab."""
