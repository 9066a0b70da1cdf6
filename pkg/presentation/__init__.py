# Presentation Layer
# Command-line interface and report schemas
