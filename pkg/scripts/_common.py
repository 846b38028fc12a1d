"""Shared helpers: dataclass configs as command-line flags and CSV output."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys
from typing import TypeVar

T = TypeVar("T")


def parse_config(cls: type[T], description: str) -> tuple[T, str | None]:
    """Build a parser with one flag per dataclass field and return (config, output path)."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        kind = type(f.default)
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=kind, default=f.default)
    parser.add_argument("-o", "--output", default=None, help="CSV path (default: stdout)")
    ns = vars(parser.parse_args())
    out = ns.pop("output")
    return cls(**ns), out


def write_csv(config, header: list[str], rows, path: str | None) -> None:
    handle = sys.stdout if path is None else open(path, "w", newline="\n", encoding="utf-8")
    try:
        params = " ".join(f"{k}={v!r}" for k, v in dataclasses.asdict(config).items())
        handle.write(f"# {params}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(x)) if not isinstance(x, (int, str)) else x for x in row])
    finally:
        if handle is not sys.stdout:
            handle.close()
