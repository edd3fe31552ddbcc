"""Regenerate the JSON workspaces in fixtures/ from corings.fixtures."""

import argparse
from pathlib import Path

from corings.fixtures import WORKSPACES
from corings.workspace import dumps

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in WORKSPACES.items():
        (out / name).write_text(dumps(build()))
        print(f"wrote {out / name}")
