"""
Plain-text output helpers for braidbook: aligned tables and key/value blocks.
"""

from typing import Any, Optional, Sequence, Tuple

from core.orderings import FdtcEstimate


def format_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def format_estimate(est: Optional[FdtcEstimate]) -> str:
    if est is None:
        return "-"
    text = f"[{est.lower}, {est.upper}]"
    if est.pinned is not None:
        text += f" pinned {est.pinned}"
    return text


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Left-aligned columns separated by two spaces, with a rule under the header."""
    cells = [[format_value(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
             "  ".join("-" * w for w in widths)]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def format_fields(pairs: Sequence[Tuple[str, Any]]) -> str:
    """``key: value`` lines with aligned colons."""
    width = max((len(k) for k, _ in pairs), default=0)
    return "\n".join(f"{k.ljust(width)}: {format_value(v)}" for k, v in pairs)


__all__ = ['format_value', 'format_estimate', 'format_table', 'format_fields']
