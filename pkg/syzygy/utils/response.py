import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional


def dump_json(data: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation"""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def success_response(
    data: Dict[str, Any],
    text: str = "",
    output_format: str = "table",
    out: Optional[str] = None,
) -> None:
    """Write a command's result: the text table, the JSON payload, or both"""
    payload = dump_json(data)
    if out:
        Path(out).write_text(payload)
    if output_format in ("table", "both") and text:
        sys.stdout.write(text.rstrip("\n") + "\n")
    if output_format in ("json", "both") and not out:
        sys.stdout.write(payload)
    sys.stdout.flush()


def error_response(
    message: str = "Error",
    exit_code: int = 2,
    details: Optional[Dict[str, Any]] = None,
) -> int:
    """One-line error envelope on stderr; returns the exit code"""
    response_data = {
        "success": False,
        "message": message,
        "exit_code": exit_code,
        "details": details or None,
    }
    sys.stderr.write(json.dumps(response_data, sort_keys=True, default=str) + "\n")
    return exit_code
