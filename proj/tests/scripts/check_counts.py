#!/usr/bin/env python3
"""Re-runs count_profile.py and compares with the checked-in outputs.

Usage: check_counts.py FUSED_NT PROFILE_TSV CLASS_TSV
"""
import pathlib
import subprocess
import sys

script = pathlib.Path(__file__).with_name("count_profile.py")
nt, profile, classes = sys.argv[1:4]
ok = True
for extra, expected in (([], profile), (["--classes"], classes)):
    got = subprocess.run([sys.executable, str(script), nt, *extra], check=True, capture_output=True, text=True).stdout
    if got != pathlib.Path(expected).read_text(encoding="utf-8"):
        print(f"{expected}: stale, script now prints:\n{got}")
        ok = False
sys.exit(0 if ok else 1)
