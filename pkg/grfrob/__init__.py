"""grfrob - exact engine for group-graded algebras over prime fields"""
__version__ = "1.0.0"
