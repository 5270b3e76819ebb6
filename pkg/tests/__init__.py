"""Main test module."""
