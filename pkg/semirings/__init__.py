"""
Finite commutative semirings: coreflections, quotients and colimits.
"""
