"""
Numerical services: one module per stage of the stress pipeline.
"""
