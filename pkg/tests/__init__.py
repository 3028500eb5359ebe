"""
tests
~~~~~

Test suite for the cbnpy package.
"""
