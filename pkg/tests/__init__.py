"""Tests for propa."""
