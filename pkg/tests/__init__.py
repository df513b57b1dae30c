"""Test suite for the fairdag solvers."""
