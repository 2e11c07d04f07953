"""kgforge: a knowledge-graph construction toolkit for recipe data."""

__version__ = "0.1.0"
