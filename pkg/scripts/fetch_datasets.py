#!/usr/bin/env python3
"""Download the three public benchmark datasets used by the acceptance suite.

Requires network access; the library itself never downloads anything. Files
are converted to the plain CSV layout the loader expects (features...,label)
and written into the repository's data/ directory:

    monks3.csv             122 rows, 6 features, label in {0,1}, positive "1"
    blood_transfusion.csv  748 rows, 4 features, label in {0,1}, positive "1"
    sonar.csv              208 rows, 60 features, label in {R,M}, positive "M"

Usage: python scripts/fetch_datasets.py [DEST_DIR]
"""

import sys
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

SOURCES = {
    "monks3": f"{UCI}/monks-problems/monks-3.train",
    "blood_transfusion": f"{UCI}/blood-transfusion/transfusion.data",
    "sonar": f"{UCI}/undocumented/connectionist-bench/sonar/sonar.all-data",
}


def fetch(url: str) -> list[str]:
    print(f"fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as r:
        text = r.read().decode("utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def convert_monks3(lines):
    # source rows: "class a1 a2 a3 a4 a5 a6 id"; drop the trailing id and
    # move the class label to the last column
    out = []
    for ln in lines:
        toks = ln.split()
        out.append(",".join(toks[1:7] + [toks[0]]))
    return out


def convert_blood(lines):
    # source is CSV with a header row; keep data rows as features,label
    return lines[1:]


def convert_sonar(lines):
    # already features...,label with label in {R,M}
    return lines


def main() -> int:
    dest = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1] / "data")
    dest.mkdir(parents=True, exist_ok=True)
    converters = {
        "monks3": convert_monks3,
        "blood_transfusion": convert_blood,
        "sonar": convert_sonar,
    }
    for key, url in SOURCES.items():
        rows = converters[key](fetch(url))
        path = dest / f"{key}.csv"
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
