"""Test suite for the tensor eigenpair toolkit."""
