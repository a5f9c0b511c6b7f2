#!/usr/bin/env python3
"""Download the SNAP ego-Facebook edge list used by the paper-scale test.

Writes data/facebook_combined.txt (plain edge list, 4039 nodes / 88234
edges). Needs outbound network access; in sandboxes without it, copy the
file in manually or set BIHARMONIC_FACEBOOK_EDGELIST.
"""
import gzip
import sys
import urllib.request
from pathlib import Path

URL = "https://snap.stanford.edu/data/facebook_combined.txt.gz"


def main() -> int:
    out_dir = Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(exist_ok=True)
    target = out_dir / "facebook_combined.txt"
    if target.exists():
        print(f"already present: {target}")
        return 0
    print(f"fetching {URL} ...")
    try:
        with urllib.request.urlopen(URL, timeout=60) as resp:
            raw = resp.read()
    except OSError as exc:
        print(f"download failed: {exc}", file=sys.stderr)
        print("no network access? fetch the file elsewhere and place it at "
              f"{target}", file=sys.stderr)
        return 1
    text = gzip.decompress(raw).decode("utf-8")
    target.write_text(text)
    lines = sum(1 for line in text.splitlines() if line and not line.startswith("#"))
    print(f"wrote {target} ({lines} edges)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
