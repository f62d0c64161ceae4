"""Collects one status line per acceptance criterion."""

RESULTS: dict[int, str] = {}


def record(n: int, title: str, checks: dict[str, bool]) -> bool:
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    detail = "" if ok else " (failed: " + "; ".join(failed) + ")"
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}{detail}"
    RESULTS[n] = line
    print(line)
    return ok
