#!/usr/bin/env python3
"""
Entry point for the geophase command line
"""

import sys
from pathlib import Path

# Add the repository root to the Python path
sys.path.insert(0, str(Path(__file__).parent))

from geophase.cli import main

if __name__ == "__main__":
    sys.exit(main())
