"""On-disk store for graded bases, one JSON file per (p, n).

Files live under ``<root>/<SCHEMA>/p<p>/basis-<n>.json`` so a change of
format only needs a new schema tag.  Unreadable files are treated as misses.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from . import ring

SCHEMA = "exspec-basis-v1"
ENV_VAR = "EXSPEC_CACHE_DIR"


class BasisStore:
    def __init__(self, root):
        self.root = Path(root) / SCHEMA

    def path(self, p: int, n: int) -> Path:
        return self.root / f"p{p}" / f"basis-{n}.json"

    def load(self, p: int, n: int):
        try:
            data = json.loads(self.path(p, n).read_text())
            return tuple(ring.Monomial(*m) for m in data["monomials"])
        except (OSError, ValueError, KeyError, TypeError):
            return None

    def save(self, p: int, n: int, monomials) -> None:
        path = self.path(p, n)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps({"p": p, "n": n, "monomials": [list(m) for m in monomials]}))
        tmp.replace(path)


def resolve_dir(flag: str | None) -> str | None:
    """The environment variable wins over the command-line flag."""
    return os.environ.get(ENV_VAR) or flag


def install(root) -> BasisStore | None:
    store = BasisStore(root) if root else None
    ring.set_basis_store(store)
    return store
