"""Low-lying zero statistics for families of L-functions of level-1 eigenforms."""

__version__ = "0.1.0"
