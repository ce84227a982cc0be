"""Inference server speaking the restoration wire protocol."""

__version__ = "0.1.0"
