# Repository Package
# In-memory repositories over catalog templates
