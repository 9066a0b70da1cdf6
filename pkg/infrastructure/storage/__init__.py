# Storage Package
# Single writer for report files and field dumps
