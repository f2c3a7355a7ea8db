"""Tests for oracles and censuses."""
