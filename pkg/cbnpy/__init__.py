"""
cbnpy
~~~~~

The cbnpy package - periodic orbits, irreducible components and the stability of attractors under single entry
perturbations for conjunctive Boolean networks, every analytic result checkable against exhaustive simulation
"""
