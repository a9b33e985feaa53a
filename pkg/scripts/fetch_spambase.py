#!/usr/bin/env python3
"""Download the canonical SPAMBASE dataset from the UCI repository.

The repository ships a bundled, lightly deduplicated copy of SPAMBASE
(data/spambase.csv.gz, 4597 rows) that the tests and demos use. This
script fetches the pristine 4601-row file for anyone who wants exact
parity with the original distribution:

    python scripts/fetch_spambase.py [--dest data/spambase.data]

The download is validated structurally (4601 rows, 58 numeric fields
per row, 1813 spam / 2788 non-spam labels) and its SHA-256 is printed
so you can pin it. Pass --sha256 <hex> to enforce a known digest.
"""

import argparse
import hashlib
import sys
import urllib.request
from pathlib import Path

URLS = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/spambase/spambase.data",
    "https://archive.ics.uci.edu/static/public/94/spambase.zip",
)

EXPECTED_ROWS = 4601
EXPECTED_FIELDS = 58
EXPECTED_SPAM = 1813


def download(url: str) -> bytes:
    print(f"fetching {url} ...")
    with urllib.request.urlopen(url, timeout=60) as response:
        return response.read()


def extract_data(raw: bytes, url: str) -> bytes:
    if not url.endswith(".zip"):
        return raw
    import io
    import zipfile

    with zipfile.ZipFile(io.BytesIO(raw)) as archive:
        return archive.read("spambase.data")


def validate(text: str) -> None:
    rows = [line for line in text.strip().split("\n") if line.strip()]
    if len(rows) != EXPECTED_ROWS:
        sys.exit(f"expected {EXPECTED_ROWS} rows, got {len(rows)}")
    spam = 0
    for i, row in enumerate(rows):
        fields = row.split(",")
        if len(fields) != EXPECTED_FIELDS:
            sys.exit(f"row {i + 1}: expected {EXPECTED_FIELDS} fields, got {len(fields)}")
        try:
            values = [float(f) for f in fields]
        except ValueError as err:
            sys.exit(f"row {i + 1}: {err}")
        spam += int(values[-1])
    if spam != EXPECTED_SPAM:
        sys.exit(f"expected {EXPECTED_SPAM} spam labels, got {spam}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", default="data/spambase.data")
    parser.add_argument("--sha256", default=None, help="enforce this digest")
    args = parser.parse_args()

    last_error = None
    for url in URLS:
        try:
            payload = extract_data(download(url), url)
            break
        except Exception as err:  # noqa: BLE001 - report and try the mirror
            print(f"  failed: {err}")
            last_error = err
    else:
        sys.exit(f"all download sources failed: {last_error}")

    digest = hashlib.sha256(payload).hexdigest()
    print(f"sha256: {digest}")
    if args.sha256 and digest != args.sha256.lower():
        sys.exit(f"digest mismatch: expected {args.sha256}")

    validate(payload.decode())
    dest = Path(args.dest)
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_bytes(payload)
    print(f"wrote {dest} ({len(payload)} bytes, {EXPECTED_ROWS} rows)")
    print("use it via:  hcvr select --data", dest, "--label -1 --theta 0.02")
    return 0


if __name__ == "__main__":
    sys.exit(main())
