"""Splitting one search into shards and merging the reports.

Runs the reduced-deck check for 7-vertex tournaments in one go, then as
four shards split at depth 4, and shows that merging the shard reports
reproduces the single run line for line.
"""

import io
import tempfile
from pathlib import Path

from graphrecon.cli import main as cli


def run(argv):
    out = io.StringIO()
    code = cli(argv, out=out)
    assert code == 0, f"{argv} exited with {code}"
    return out.getvalue()


def main():
    base = ["check", "-n", "7", "--tournament", "--deck", "reduced"]
    whole = run(base)
    print("single run:")
    print(whole, end="")
    with tempfile.TemporaryDirectory() as tmp:
        paths = []
        for r in range(4):
            text = run(base + ["--res", str(r), "--mod", "4", "--depth", "4"])
            path = Path(tmp) / f"shard{r}.txt"
            path.write_text(text)
            paths.append(str(path))
            print(f"shard {r}: {len(text.splitlines())} line(s)")
        merged = run(["merge", *paths])
    print("merged equals single run:", merged == whole)


if __name__ == "__main__":
    main()
