# Data Access Layer
# Surface catalog and its repository
