#!/usr/bin/env python3
"""Reproduce the paired eigenfrequency table for the measured beam.

Writes out/roots.csv with both root families (exact interface determinant vs
truncated product form), their frequencies in Hz, and the pairing layout.
"""

import sys

from shakerbeam.cli import main

if __name__ == "__main__":
    sys.exit(main(["roots", *sys.argv[1:]]))
