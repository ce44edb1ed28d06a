"""FastAPI service wrapping the kinematics core."""
