#!/usr/bin/env python3
"""Download the Cora citation network and convert it to curvreg's formats.

Produces <out>/cora.edges ("id id" per line) and <out>/cora.labels
("id class" per line) from the LINQS distribution (cora.cites +
cora.content). Needs network access; the sandbox-friendly alternative is the
built-in synthetic citation stand-in, which the evaluation tools fall back to
automatically when these files are absent.
"""

import argparse
import io
import sys
import tarfile
import urllib.request

URL = "https://linqs-data.soe.ucsc.edu/public/lbc/cora.tgz"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data", help="output directory (default: data)")
    ap.add_argument("--url", default=URL, help="archive URL (default: LINQS mirror)")
    args = ap.parse_args()

    print(f"downloading {args.url} ...")
    with urllib.request.urlopen(args.url, timeout=60) as resp:
        blob = resp.read()
    print(f"  {len(blob)} bytes")

    cites = content = None
    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as tar:
        for member in tar.getmembers():
            if member.name.endswith("cora.cites"):
                cites = tar.extractfile(member).read().decode()
            elif member.name.endswith("cora.content"):
                content = tar.extractfile(member).read().decode()
    if cites is None or content is None:
        print("archive did not contain cora.cites / cora.content", file=sys.stderr)
        return 1

    labels = {}
    for line in content.splitlines():
        parts = line.split()
        if len(parts) >= 2:
            labels[parts[0]] = parts[-1]  # first token: paper id, last: class name

    edges = set()
    for line in cites.splitlines():
        parts = line.split()
        if len(parts) == 2 and parts[0] != parts[1]:
            edges.add(tuple(sorted(parts)))

    import os

    os.makedirs(args.out, exist_ok=True)
    edges_path = os.path.join(args.out, "cora.edges")
    labels_path = os.path.join(args.out, "cora.labels")
    with open(edges_path, "w") as f:
        for a, b in sorted(edges):
            f.write(f"{a} {b}\n")
    with open(labels_path, "w") as f:
        for node in sorted(labels):
            f.write(f"{node} {labels[node]}\n")

    classes = sorted(set(labels.values()))
    print(f"wrote {edges_path}: {len(edges)} undirected edges")
    print(f"wrote {labels_path}: {len(labels)} labeled nodes, {len(classes)} classes")
    if len(labels) != 2708:
        print("warning: expected 2708 labeled nodes", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
