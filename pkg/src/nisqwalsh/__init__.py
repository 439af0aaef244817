"""Noisy random-circuit sampling, Fourier-Walsh analysis and stationarity tests."""

__version__ = "0.1.0"
