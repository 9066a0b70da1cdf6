# Catalog Package
# Family templates, constraints and golden values
