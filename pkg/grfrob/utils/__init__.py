"""Utility modules"""
from .config import Limits, load_config
