# Infrastructure Layer
# Errors, logging, settings, numerics, ambient geometry and report storage
