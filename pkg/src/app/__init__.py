"""Application layer: run configuration, command runner, export and verification."""
