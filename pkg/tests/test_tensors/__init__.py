"""Tests for tensor storage, kernels and the JSON codec."""
