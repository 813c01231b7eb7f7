#!/usr/bin/env python3
"""Run the acceptance suite with per-criterion pass/fail lines."""

import subprocess
import sys
from pathlib import Path


def main():
    root = Path(__file__).resolve().parent.parent
    cmd = [sys.executable, "-m", "pytest", str(root / "tests" / "test_acceptance.py"),
           "-s", "-v", *sys.argv[1:]]
    return subprocess.call(cmd, cwd=root)


if __name__ == "__main__":
    sys.exit(main())
