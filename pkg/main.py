#!/usr/bin/env python3
"""Main entry point for the qcorr-damping command line."""

from src.app.cli import app

if __name__ == "__main__":
    app()
