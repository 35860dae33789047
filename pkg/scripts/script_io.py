"""Shared CSV writer for the experiment scripts (same number format as the CLI)."""
from pathlib import Path

from mixedcorr.cli import render


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(header, rows, "csv"))
    print(f"wrote {len(rows)} rows -> {path}")
