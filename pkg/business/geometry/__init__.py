# Geometry Package
# Pointwise invariants of Lagrangian surfaces
