"""Minimum regularized covariance determinant estimation toolkit."""

__version__ = "1.0.0"
