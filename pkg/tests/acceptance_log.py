"""Collects one summary line per acceptance criterion."""
LINES: list[str] = []


def record(num: int, ok: bool, what: str, seconds: float) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {what}"
    LINES.append(line)
    print(line)
