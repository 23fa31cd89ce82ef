"""File formats for algebras and analysis reports"""
from .codec import dump_algebra, dump_corpus, load_algebra, load_corpus, read_algebra_file
from .schemas import AlgebraFile, ReportFile, SCHEMA_VERSION
