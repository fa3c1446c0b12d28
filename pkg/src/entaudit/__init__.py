"""Exact auditing of multipartite versus bipartite entanglement under bounded local registers."""

__version__ = "0.1.0"
