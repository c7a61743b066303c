#!/usr/bin/env python
"""Download the Pendigits, Optdigits and Letter datasets from the UCI archive.

Files land in benchmarks/data/ (next to the uci.json manifest) unless
--dest says otherwise.  Already-present files are kept, so the script is
safe to re-run.  Needs outbound network access.
"""

import argparse
import os
import sys
import urllib.error
import urllib.request

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

FILES = [
    ("pendigits/pendigits.tra", "pendigits.tra"),
    ("pendigits/pendigits.tes", "pendigits.tes"),
    ("optdigits/optdigits.tra", "optdigits.tra"),
    ("optdigits/optdigits.tes", "optdigits.tes"),
    ("letter-recognition/letter-recognition.data", "letter-recognition.data"),
]


def fetch(url, dest, timeout):
    req = urllib.request.Request(url, headers={"User-Agent": "simplexmc-fetch"})
    with urllib.request.urlopen(req, timeout=timeout) as resp:
        payload = resp.read()
    if not payload:
        raise IOError(f"empty response from {url}")
    tmp = dest + ".part"
    with open(tmp, "wb") as fh:
        fh.write(payload)
    os.replace(tmp, dest)
    return len(payload)


def main(argv=None):
    here = os.path.dirname(os.path.abspath(__file__))
    default_dest = os.path.join(here, "..", "benchmarks", "data")
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dest", default=default_dest,
                    help="directory to store the files in")
    ap.add_argument("--base-url", default=BASE,
                    help="archive root to download from (mirror override)")
    ap.add_argument("--timeout", type=float, default=60.0)
    args = ap.parse_args(argv)

    os.makedirs(args.dest, exist_ok=True)
    failures = 0
    for rel, name in FILES:
        dest = os.path.join(args.dest, name)
        if os.path.exists(dest) and os.path.getsize(dest) > 0:
            print(f"{name}: already present, skipping")
            continue
        url = f"{args.base_url.rstrip('/')}/{rel}"
        try:
            size = fetch(url, dest, args.timeout)
            print(f"{name}: {size} bytes")
        except (urllib.error.URLError, OSError) as exc:
            print(f"{name}: FAILED ({exc})", file=sys.stderr)
            failures += 1
    if failures:
        print(f"{failures} file(s) failed; re-run when the archive is "
              "reachable or pass --base-url for a mirror", file=sys.stderr)
        return 1
    print(f"all files present under {os.path.abspath(args.dest)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
