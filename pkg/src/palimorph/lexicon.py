"""File-backed lexicon with named word collections.

Each collection is one UTF-8 file named after the collection, one JSON
record per line. Records always carry a top-level ``word`` key; everything
else is preserved verbatim. Lookups are exact matches on the normalized
surface form.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import IoFailureError, MissingWordKeyError, UnknownCollectionError
from .phonology.alphabet import normalize

STANDARD_COLLECTIONS = ("wordforms", "lemma", "generated")

# Collections consulted when scoring sandhi splits.
CONFIDENCE_COLLECTIONS = ("wordforms", "lemma")


def canonical_json(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


class LexiconStore:
    """Open a directory of collection files; missing files are empty.

    Collections are loaded lazily. Writes append to the backing file and
    are durable after flush(); byte-equal duplicate records are inserted
    only once. `version` increases with every accepted insert, which lets
    cached derived values (split confidences) notice updates.
    """

    def __init__(self, path: str | Path, create: bool = True):
        self.path = Path(path)
        self.version = 0
        try:
            if create:
                self.path.mkdir(parents=True, exist_ok=True)
            if not self.path.is_dir():
                raise IoFailureError(f"not a directory: {self.path}")
        except OSError as exc:
            raise IoFailureError(str(exc)) from exc
        self._collections: dict[str, dict[str, list[dict]]] = {}
        self._lines: dict[str, set[str]] = {}
        self._handles = {}

    # -- loading ------------------------------------------------------------

    def _load(self, collection: str, create: bool = False) -> dict[str, list[dict]]:
        if collection in self._collections:
            return self._collections[collection]
        if not collection or "/" in collection or collection.startswith("."):
            raise UnknownCollectionError(collection)
        file = self.path / collection
        known = collection in STANDARD_COLLECTIONS or file.exists() or create
        if not known:
            raise UnknownCollectionError(collection)
        entries: dict[str, list[dict]] = {}
        lines: set[str] = set()
        if file.exists():
            try:
                text = file.read_text(encoding="utf-8")
            except OSError as exc:
                raise IoFailureError(str(exc)) from exc
            for raw in text.splitlines():
                raw = raw.strip()
                if not raw:
                    continue
                record = json.loads(normalize(raw))
                entries.setdefault(normalize(record["word"]), []).append(record)
                lines.add(canonical_json(record))
        self._collections[collection] = entries
        self._lines[collection] = lines
        return entries

    # -- queries ------------------------------------------------------------

    def lookup(self, collection: str, word: str) -> list[dict]:
        """All records stored for the word, in insertion order."""
        return list(self._load(collection).get(normalize(word), []))

    def contains(self, collection: str, word: str) -> bool:
        return bool(self._load(collection).get(normalize(word)))

    def contains_word(self, word: str) -> bool:
        """Membership in the collections used for confidence scoring."""
        return any(self.contains(c, word) for c in CONFIDENCE_COLLECTIONS)

    def count(self, collection: str) -> int:
        return sum(len(records) for records in self._load(collection).values())

    # -- updates ------------------------------------------------------------

    def insert(self, collection: str, record: dict) -> bool:
        """Append a record; byte-equal duplicates are ignored.

        Returns True if the record was new. The word key is required.
        """
        if "word" not in record:
            raise MissingWordKeyError(f"record without word key: {record!r}")
        entries = self._load(collection, create=True)
        line = canonical_json(record)
        if line in self._lines[collection]:
            return False
        entries.setdefault(normalize(record["word"]), []).append(record)
        self._lines[collection].add(line)
        self.version += 1
        try:
            handle = self._handles.get(collection)
            if handle is None:
                handle = open(self.path / collection, "a", encoding="utf-8")
                self._handles[collection] = handle
            handle.write(line + "\n")
        except OSError as exc:
            raise IoFailureError(str(exc)) from exc
        return True

    def flush(self) -> None:
        try:
            for handle in self._handles.values():
                handle.flush()
        except OSError as exc:
            raise IoFailureError(str(exc)) from exc

    def close(self) -> None:
        self.flush()
        for handle in self._handles.values():
            handle.close()
        self._handles.clear()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()


def open_store(path: str | Path) -> LexiconStore:
    return LexiconStore(path)
