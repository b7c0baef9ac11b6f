"""Tests for rczcp."""
