#!/usr/bin/env python3
"""Render the eigenmode overlay and the spectral growth figure as SVG.

Runs the `modes` and `growth` commands back to back with shared options so
both figures come from one consistent configuration.
"""

import sys

from shakerbeam.cli import main

if __name__ == "__main__":
    extra = sys.argv[1:]
    code = main(["modes", *extra])
    if code == 0:
        code = main(["growth", *extra])
    sys.exit(code)
