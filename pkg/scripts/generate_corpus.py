"""Regenerate the shipped catalogs and derivation scripts."""
import argparse
from pathlib import Path

from mcgbundles.corpus import DATA, write_all

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA)
    for p in write_all(ap.parse_args().out):
        print(p)
