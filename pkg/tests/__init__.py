"""Test suite for pitwidth."""
