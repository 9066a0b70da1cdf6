# Config Package
# HSL_* settings and tolerance profiles
