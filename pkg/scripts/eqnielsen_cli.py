#!/usr/bin/env python3
"""
Command-line entry for the equivariant Nielsen engine.

    python scripts/eqnielsen_cli.py invariants problems/s4_pole_swap_identity.json --format json
"""

import sys
from pathlib import Path

# Add src to path for imports
sys.path.append(str(Path(__file__).parent.parent / "src"))

from eqnielsen.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
