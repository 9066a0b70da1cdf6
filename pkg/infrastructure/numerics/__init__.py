# Numerics Package
# Taylor jets, finite-difference stencils and Gauss-Legendre quadrature
