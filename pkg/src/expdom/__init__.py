"""Certified bounds for porous exponential domination on torus grids."""
