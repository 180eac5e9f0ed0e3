"""
TelaGen CLI Commands Package

Individual command implementations for translate, check, pattern and bench.
"""
