"""Edge-coloring reconfiguration engine and its reduction from NCL."""

__version__ = "0.1.0"
