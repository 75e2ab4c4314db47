"""
Rendering of results as plain text, Markdown or JSON.

Both the CLI and the MCP tools go through format_response, so a key or a
distortion table reads the same on a terminal and in an assistant.
"""

import json
from typing import Any

from pydantic import BaseModel

from ..models.base import ResponseFormat

# Words longer than this are abbreviated in Markdown
WORD_PREVIEW = 80


def _plain(data: Any) -> Any:
    if isinstance(data, BaseModel):
        return data.model_dump(mode='json')
    if isinstance(data, (list, tuple)):
        return [_plain(item) for item in data]
    if isinstance(data, dict):
        return {k: _plain(v) for k, v in data.items()}
    return data


def format_as_json(data: Any, pretty: bool = True) -> str:
    """Models are dumped in JSON mode first, so classes and words keep their wire form."""
    return json.dumps(_plain(data), indent=2 if pretty else None, default=str, ensure_ascii=False)


def format_as_text(data: Any) -> str:
    """
    Format data as ``key: value`` lines for terminals and scripts.

    Lists of records become one space-separated line per record.
    """
    data = _plain(data)
    if isinstance(data, dict):
        return "\n".join(f"{key}: {_inline(value)}" for key, value in data.items())
    if isinstance(data, list):
        lines = []
        for item in data:
            if isinstance(item, dict):
                lines.append(" ".join(f"{k}={_inline(v)}" for k, v in item.items()))
            else:
                lines.append(_inline(item))
        return "\n".join(lines)
    return _inline(data)


def _inline(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return " ".join(_inline(v) for v in value)
    if isinstance(value, dict):
        return "; ".join(f"{k}: {_inline(v)}" for k, v in value.items())
    return str(value)


def _cell(value: Any) -> str:
    """One Markdown value: marks for booleans, abbreviated words, pairs as classes."""
    if value is None or value == '':
        return "-"
    if isinstance(value, bool):
        return "✓" if value else "✗"
    if isinstance(value, float):
        return f"{value:.9g}"
    if isinstance(value, list):
        if len(value) == 2 and all(isinstance(v, int) for v in value):
            return f"({value[0]},{value[1]})"
        return ", ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return "; ".join(f"{k}: {_cell(v)}" for k, v in value.items() if v is not None)
    text = str(value)
    if len(text) > WORD_PREVIEW:
        return f"`{text[:WORD_PREVIEW]}…` ({len(text):,} chars)"
    return text


def _label(field: str) -> str:
    name = field.replace('_', ' ')
    return name[0].upper() + name[1:] if name else name


def _is_table(rows: list[Any]) -> bool:
    """Rows of flat records sharing one set of keys render as a table."""
    if not rows or not all(isinstance(row, dict) for row in rows):
        return False
    keys = list(rows[0])
    return all(list(row) == keys for row in rows) and not any(
        isinstance(v, dict) for row in rows for v in row.values()
    )


def _markdown_table(rows: list[dict[str, Any]]) -> list[str]:
    keys = list(rows[0])
    lines = [
        "| " + " | ".join(keys) + " |",
        "|" + "|".join("---" for _ in keys) + "|",
    ]
    lines.extend("| " + " | ".join(_cell(row[k]) for k in keys) + " |" for row in rows)
    return lines


def _markdown_fields(data: dict[str, Any]) -> list[str]:
    return [
        f"- **{_label(field)}:** {_cell(value)}"
        for field, value in data.items()
        if value is not None and value != []
    ]


def format_as_markdown(data: Any, title: str | None = None) -> str:
    """
    Format data as Markdown.

    Records become bullet lists; uniform row lists (distortion, scans,
    timings) become a table under a row count.
    """
    lines = [f"# {title}\n"] if title else []

    data = _plain(data)
    if isinstance(data, list):
        lines.append(f"**Rows:** {len(data)}\n")
        if not data:
            lines.append("*No rows*")
        elif _is_table(data):
            lines.extend(_markdown_table(data))
        else:
            for item in data:
                lines.extend(_markdown_fields(item) if isinstance(item, dict) else [f"- {_cell(item)}"])
                lines.append("")
    elif isinstance(data, dict):
        lines.extend(_markdown_fields(data))
    else:
        lines.append(_cell(data))

    return "\n".join(lines)


def truncate_response(content: str, max_chars: int = 50000) -> str:
    """Cut content at a line break below max_chars and say so."""
    if len(content) <= max_chars:
        return content

    cut = content.rfind('\n', 0, max_chars)
    kept = content[:cut] if cut > 0 else content[:max_chars]
    return (
        f"{kept}\n\n---\n\n"
        f"⚠ **Output cut at {len(kept):,} of {len(content):,} characters.** "
        "Lower N or use the fibernorm CLI, which writes full CSV files."
    )


def format_response(
    data: Any,
    title: str | None = None,
    format_type: ResponseFormat | None = None
) -> str:
    """Render data in the requested format, Markdown when none is given."""
    if format_type == ResponseFormat.JSON:
        return format_as_json(data)
    if format_type == ResponseFormat.TEXT:
        return format_as_text(data)
    return format_as_markdown(data, title)
