#!/usr/bin/env python3
"""
Write the problem catalog as JSON files, one per entry.

Relabeled copies (`--relabel-seeds N`) exercise vertex-name independence by hand:
run `invariants --format json` on a file and its copies and compare the `summary` blocks.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "src"))

from eqnielsen.catalog import CATALOG, OVERFLOWING, build  # noqa: E402
from eqnielsen.report import write_file_atomically  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description="Write the problem catalog as JSON files")
    parser.add_argument("--output-root", default="problems",
                        help="Destination directory (default: problems)")
    parser.add_argument("--only", nargs="*", choices=sorted(CATALOG), help="Entries to write (default: all)")
    parser.add_argument("--relabel-seeds", type=int, default=0,
                        help="Also write this many randomly relabeled copies of each entry")
    args = parser.parse_args()

    root = Path(args.output_root)
    root.mkdir(parents=True, exist_ok=True)
    names = args.only or sorted(CATALOG)
    for name in names:
        docs = [(name, build(name))]
        docs += [(f"{name}.relabel{seed}", build(name, seed)) for seed in range(args.relabel_seeds)]
        for stem, doc in docs:
            path = root / f"{stem}.json"
            write_file_atomically(path, json.dumps(doc, indent=2) + "\n")
        note = " (exits 3: infinite pi1)" if name in OVERFLOWING else ""
        print(f"✅ {name}{note}")
    print(f"📁 {len(names)} catalog entries written to {root}")


if __name__ == "__main__":
    main()
