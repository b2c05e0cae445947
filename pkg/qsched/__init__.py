"""Gate scheduling for quantum circuits with precedence constraints."""

__version__ = "0.1.0"
