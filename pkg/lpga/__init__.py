"""
Package for reproducible computations with Leavitt path algebras and their
spatial representations.
"""
