"""Tests for eigenpair solvers and certification."""
