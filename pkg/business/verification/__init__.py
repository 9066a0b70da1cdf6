# Verification Package
# Check suite, global checks and the first-variation oracle
