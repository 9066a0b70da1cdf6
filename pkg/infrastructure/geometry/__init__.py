# Geometry Package
# Ambient spaces, Hermitian pairings and immersion evaluation
