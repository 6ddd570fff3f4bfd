"""Fetch the LastFM-Asia social network and convert it to an edge list.

Downloads the SNAP archive, extracts the edge CSV, and writes a plain
whitespace-separated edge list to data/lastfm_asia.edges (7624 nodes,
27806 edges).  The case-study tests skip themselves when this file is
absent, so run this once on a machine with network access:

    python3 scripts/fetch_lastfm_asia.py
"""

from __future__ import annotations

import csv
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

URL = "https://snap.stanford.edu/data/lastfm_asia.zip"
OUT = Path(__file__).resolve().parent.parent / "data" / "lastfm_asia.edges"


def main() -> int:
    print(f"downloading {URL} ...")
    with urllib.request.urlopen(URL, timeout=120) as resp:
        payload = resp.read()
    print(f"got {len(payload)} bytes")
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        names = zf.namelist()
        member = next(
            (n for n in names if n.endswith("lastfm_asia_edges.csv")), None
        )
        if member is None:
            print(f"edge CSV not found in archive; members: {names}",
                  file=sys.stderr)
            return 1
        raw = zf.read(member).decode("utf-8")
    rows = list(csv.reader(io.StringIO(raw)))
    if rows and not rows[0][0].isdigit():
        rows = rows[1:]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w") as fh:
        for row in rows:
            fh.write(f"{row[0]} {row[1]}\n")
    print(f"wrote {len(rows)} edges to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
