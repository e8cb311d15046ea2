"""
charperiodic

Time-periodic solutions of linear first-order hyperbolic systems in one space
dimension with reflection boundary conditions, computed by integration along
characteristics.
"""

__version__ = "0.1.0"
