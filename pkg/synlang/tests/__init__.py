"""
Testing of synlang modules.
"""
