# Business Layer
# Surface geometry and verification checks
