"""
Unit tests for synlang modules.
"""
