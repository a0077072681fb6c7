"""JSON format tag shared by every gapforge file format."""

from __future__ import annotations

from .errors import SchemaVersionError

FORMAT_TAG = "gapforge-v1"


def check_format(doc: dict) -> None:
    """Reject documents with a wrong format tag; a missing tag is accepted."""
    tag = doc.get("format")
    if tag is not None and tag != FORMAT_TAG:
        raise SchemaVersionError(f"unsupported format tag {tag!r}, expected {FORMAT_TAG!r}")


def require_keys(doc: dict, keys: tuple[str, ...], what: str) -> None:
    for key in keys:
        if key not in doc:
            raise SchemaVersionError(f"{what} document is missing key {key!r}")
