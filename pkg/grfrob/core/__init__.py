"""Core algebra modules"""
from .grcore import GradedAlgebra, GradedModule
from .groups import FiniteGroup
