"""Distance-based peripherality measures, extremal searches and hardness gadgets."""

__version__ = "0.1.0"
