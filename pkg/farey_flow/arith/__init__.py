"""Exact arithmetic layer: rationals, quadratic surds, boundary points, SL2(Z) matrices."""
