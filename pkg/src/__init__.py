"""denfuse: decentralised variational multi-object tracking workbench."""

__version__ = "0.1.0"
